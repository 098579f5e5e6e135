#include "annular/entire_function.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace annular {

EntireFunction make_exp() {
  EntireFunction f;
  f.id = "exp";
  f.kind = FnKind::Exp;
  f.mc = MCClass::NoMC;
  return f;
}

EntireFunction make_aexpb(const std::string& a, const std::string& b) {
  EntireFunction f;
  f.id = "aexpb";
  f.kind = FnKind::AExpB;
  f.mc = MCClass::Unknown;
  f.pa = a;
  f.pb = b;
  return f;
}

EntireFunction make_sin() {
  EntireFunction f;
  f.id = "sin";
  f.kind = FnKind::Sin;
  f.mc = MCClass::NoMC;
  return f;
}

EntireFunction make_cosh() {
  EntireFunction f;
  f.id = "cosh";
  f.kind = FnKind::Cosh;
  f.mc = MCClass::Unknown;
  return f;
}

EntireFunction make_zexpz() {
  EntireFunction f;
  f.id = "zexpz";
  f.kind = FnKind::ZExpZ;
  f.mc = MCClass::Unknown;
  return f;
}

EntireFunction make_monomial(const std::string& coeff, int degree) {
  EntireFunction f;
  f.id = "monomial_d" + std::to_string(degree);
  f.kind = FnKind::Monomial;
  // zero-free test harness standing in for the multiply connected code path
  f.mc = MCClass::HasMC;
  f.pa = coeff;
  f.degree = degree;
  return f;
}

EntireFunction make_exp_plus(const std::string& b) {
  EntireFunction f;
  f.id = "exp_plus_" + b;
  f.kind = FnKind::AExpB;
  f.mc = MCClass::HasMC; // declared stub for exercising the MC assembly path
  f.pa = "1";
  f.pb = b;
  return f;
}

EntireFunction load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open coefficient file: " + path);
  EntireFunction f;
  f.id = "series";
  f.kind = FnKind::Series;
  f.mc = MCClass::Unknown;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long idx;
    std::string re, im;
    if (!(ls >> idx >> re >> im)) continue;
    f.coeffs.emplace_back(idx, re, im);
  }
  if (f.coeffs.empty()) throw DomainError("no coefficients in " + path);
  std::sort(f.coeffs.begin(), f.coeffs.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  return f;
}

std::vector<EntireFunction> builtin_catalog(const std::string& series_path) {
  std::vector<EntireFunction> cat;
  cat.push_back(make_exp());
  cat.push_back(make_aexpb("2", "3"));
  cat.push_back(make_sin());
  cat.push_back(make_cosh());
  cat.push_back(make_zexpz());
  if (!series_path.empty()) cat.push_back(load_series(series_path));
  return cat;
}

const EntireFunction* find_function(const std::vector<EntireFunction>& cat,
                                    const std::string& id) {
  for (const auto& f : cat)
    if (f.id == id) return &f;
  return nullptr;
}

} // namespace annular
