// annular-dyn: command-line front door for the annular-dynamics library.
// Every subcommand writes a machine-readable report (JSON, or CSV for the
// moduli table). Exit codes: 0 success, 2 hypothesis/coverage failure (the
// report is still written), 1 usage or internal error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "annular/chain.hpp"
#include "annular/covering.hpp"
#include "annular/entire_function.hpp"
#include "annular/errors.hpp"
#include "annular/json_io.hpp"
#include "annular/partition.hpp"
#include "annular/radial_moduli.hpp"
#include "annular/realize.hpp"
#include "annular/synthesis.hpp"

using namespace annular;

namespace {

struct FnOpts {
  std::string id = "exp";
  std::string series_path;
  std::string a = "2", b = "3";
  std::string coeff = "1";
  int degree = 2;
};

void add_fn_opts(CLI::App* cmd, FnOpts& o) {
  cmd->add_option("--fn", o.id,
                  "function id: exp, sin, cosh, zexpz, aexpb, exp_plus, "
                  "monomial, series")
      ->capture_default_str();
  cmd->add_option("--series-file", o.series_path, "coefficient file for --fn series");
  cmd->add_option("--fn-a", o.a, "parameter a for aexpb")->capture_default_str();
  cmd->add_option("--fn-b", o.b, "parameter b for aexpb / exp_plus")
      ->capture_default_str();
  cmd->add_option("--fn-coeff", o.coeff, "leading coefficient for monomial")
      ->capture_default_str();
  cmd->add_option("--fn-degree", o.degree, "degree for monomial")
      ->capture_default_str();
}

EntireFunction resolve_fn(const FnOpts& o) {
  if (o.id == "exp") return make_exp();
  if (o.id == "sin") return make_sin();
  if (o.id == "cosh") return make_cosh();
  if (o.id == "zexpz") return make_zexpz();
  if (o.id == "aexpb") return make_aexpb(o.a, o.b);
  if (o.id == "exp_plus") return make_exp_plus(o.b);
  if (o.id == "monomial") return make_monomial(o.coeff, o.degree);
  if (o.id == "series") {
    if (o.series_path.empty()) throw DomainError("--fn series needs --series-file");
    return load_series(o.series_path);
  }
  throw DomainError("unknown function id '" + o.id + "'");
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw DomainError("cannot open output file " + out_path);
  f << text;
}

Json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open " + path);
  return Json::parse(f);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) v.push_back(std::stoi(tok));
  return v;
}

// rate file: one "n log_a_n" pair per line, '#' comments
RateSpec load_rate(const std::string& path, const std::string& logR0) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open rate file " + path);
  RateSpec r;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::stringstream ss(line);
    std::string idx, val;
    if (!(ss >> idx >> val)) continue;
    r.log_a.push_back(WideReal::parse(val));
  }
  if (r.log_a.empty()) throw DomainError("rate file has no entries");
  r.logR0 = logR0.empty() ? r.log_a.front() : WideReal::parse(logR0);
  return r;
}

int report_and_flag(const std::string& out, const std::string& kind,
                    Json payload, bool ok) {
  emit(out, dump_report(make_report(kind, std::move(payload))));
  return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"annular-dyn: absorbing annuli, itineraries and realizations "
               "for entire functions"};
  app.set_config("--config", "", "flat key=value config file; flags override");
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "output file ('-' = stdout)")
      ->capture_default_str();

  // ---- moduli ----
  auto* cmd_moduli = app.add_subcommand("moduli", "radial max/min modulus table (CSV)");
  FnOpts mod_fn;
  add_fn_opts(cmd_moduli, mod_fn);
  std::string t_grid = "0.5:6:0.5";
  double mod_tol = 1e-12;
  cmd_moduli->add_option("--t-grid", t_grid, "lo:hi:step in t = log r")
      ->capture_default_str();
  cmd_moduli->add_option("--tol", mod_tol, "oracle tolerance")->capture_default_str();

  // ---- partition ----
  auto* cmd_partition = app.add_subcommand("partition", "levels log M^n(R)");
  FnOpts par_fn;
  add_fn_opts(cmd_partition, par_fn);
  std::string par_logR = "1";
  int par_depth = 6;
  cmd_partition->add_option("--logR", par_logR, "log R")->capture_default_str();
  cmd_partition->add_option("--depth", par_depth)->capture_default_str();

  // ---- itinerary ----
  auto* cmd_itinerary = app.add_subcommand("itinerary", "symbol sequence of one orbit");
  FnOpts it_fn;
  add_fn_opts(cmd_itinerary, it_fn);
  std::string it_logR = "1", it_re = "1", it_im = "0";
  int it_depth = 8, it_steps = 8;
  double it_btol = 1e-12;
  cmd_itinerary->add_option("--logR", it_logR)->capture_default_str();
  cmd_itinerary->add_option("--depth", it_depth, "partition depth")->capture_default_str();
  cmd_itinerary->add_option("--z-re", it_re)->capture_default_str();
  cmd_itinerary->add_option("--z-im", it_im)->capture_default_str();
  cmd_itinerary->add_option("--steps", it_steps)->capture_default_str();
  cmd_itinerary->add_option("--boundary-tol", it_btol)->capture_default_str();

  // ---- covering ----
  auto* cmd_covering = app.add_subcommand("covering", "boundary-moduli covering certificate");
  FnOpts cov_fn;
  add_fn_opts(cmd_covering, cov_fn);
  std::string cov_si = "2", cov_so = "4", cov_ti = "3", cov_to = "20";
  double cov_tol = 1e-9;
  cmd_covering->add_option("--src-in", cov_si, "source t_in")->capture_default_str();
  cmd_covering->add_option("--src-out", cov_so, "source t_out")->capture_default_str();
  cmd_covering->add_option("--tgt-in", cov_ti, "target t_in")->capture_default_str();
  cmd_covering->add_option("--tgt-out", cov_to, "target t_out")->capture_default_str();
  cmd_covering->add_option("--tol", cov_tol)->capture_default_str();

  // ---- annuli ----
  auto* cmd_annuli = app.add_subcommand("annuli", "build the absorbing-annuli chain");
  FnOpts an_fn;
  add_fn_opts(cmd_annuli, an_fn);
  std::string an_t0 = "2", an_profile = "desk-relaxed";
  int an_nmax = 5, an_budget = 8;
  double an_k0 = 0;
  bool an_prefer_T = false, an_absorbing = false;
  cmd_annuli->add_option("--t0", an_t0, "seed t0 = log r0")->capture_default_str();
  cmd_annuli->add_option("--n-max", an_nmax, "number of blocks")->capture_default_str();
  cmd_annuli->add_option("--profile", an_profile, "paper-strict | desk-relaxed")
      ->capture_default_str();
  cmd_annuli->add_option("--k0", an_k0, "override seed exponent k0 (0 = profile default)")
      ->capture_default_str();
  cmd_annuli->add_flag("--prefer-T", an_prefer_T, "take the T-branch when both cover");
  cmd_annuli->add_flag("--absorbing", an_absorbing,
                       "run the plain absorbing iteration (with gap annuli) instead");
  cmd_annuli->add_option("--budget", an_budget, "step budget for --absorbing")
      ->capture_default_str();

  // ---- synthesize ----
  auto* cmd_synth = app.add_subcommand("synthesize", "admissible symbolic sequences");
  FnOpts sy_fn;
  add_fn_opts(cmd_synth, sy_fn);
  std::string sy_chain, sy_mode = "count", sy_peaks, sy_rate, sy_logR0;
  int sy_horizon = 6, sy_s0 = 2, sy_cap = 4, sy_len = 6, sy_period = 3;
  int sy_smin = 2, sy_smax = 4, sy_count = 8, sy_depth = 8;
  cmd_synth->add_option("--chain", sy_chain, "chain JSON from 'annuli'")->required();
  cmd_synth->add_option("--mode", sy_mode,
                        "count | periodic | bounded | oscillating | slow")
      ->capture_default_str();
  cmd_synth->add_option("--horizon", sy_horizon)->capture_default_str();
  cmd_synth->add_option("--s0", sy_s0, "start symbol for count")->capture_default_str();
  cmd_synth->add_option("--level-cap", sy_cap)->capture_default_str();
  cmd_synth->add_option("--len", sy_len)->capture_default_str();
  cmd_synth->add_option("--period", sy_period)->capture_default_str();
  cmd_synth->add_option("--s-min", sy_smin)->capture_default_str();
  cmd_synth->add_option("--s-max", sy_smax)->capture_default_str();
  cmd_synth->add_option("--count", sy_count, "sequences to enumerate (bounded)")
      ->capture_default_str();
  cmd_synth->add_option("--peaks", sy_peaks, "comma-separated peak schedule (oscillating)");
  cmd_synth->add_option("--rate", sy_rate, "rate file for slow escape");
  cmd_synth->add_option("--logR0", sy_logR0, "override R0 for the rate");
  cmd_synth->add_option("--depth", sy_depth, "partition depth for slow escape")
      ->capture_default_str();

  // ---- realize ----
  auto* cmd_realize = app.add_subcommand("realize", "point whose orbit follows a sequence");
  FnOpts re_fn;
  add_fn_opts(cmd_realize, re_fn);
  std::string re_chain, re_seq = "0,1,2";
  int re_depth = -1;
  cmd_realize->add_option("--chain", re_chain, "chain JSON from 'annuli'")->required();
  cmd_realize->add_option("--seq", re_seq, "comma-separated block indices")
      ->capture_default_str();
  cmd_realize->add_option("--depth", re_depth, "orbit length to verify (-1 = full)")
      ->capture_default_str();

  // ---- prescribed ----
  auto* cmd_presc = app.add_subcommand("prescribed", "orbit plan for a prescribed escape rate");
  FnOpts pr_fn;
  add_fn_opts(cmd_presc, pr_fn);
  std::string pr_chain, pr_rate, pr_logR0, pr_bound = "m2";
  int pr_depth = -1, pr_branching = 0;
  double pr_eps = 0.25;
  bool pr_realize = false;
  cmd_presc->add_option("--chain", pr_chain, "chain JSON from 'annuli'")->required();
  cmd_presc->add_option("--rate", pr_rate, "rate file: 'n log_a_n' per line")->required();
  cmd_presc->add_option("--logR0", pr_logR0, "override R0 for the rate");
  cmd_presc->add_option("--bound", pr_bound, "upper-bound kind: m2 | power")
      ->capture_default_str();
  cmd_presc->add_option("--eps", pr_eps, "exponent slack for --bound power")
      ->capture_default_str();
  cmd_presc->add_option("--depth", pr_depth, "realization depth (-1 = plan length)")
      ->capture_default_str();
  cmd_presc->add_flag("--realize", pr_realize, "also realize and verify the plan");
  cmd_presc->add_option("--branching-depth", pr_branching,
                        "emit a branching witness to this depth (0 = off)")
      ->capture_default_str();

  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_moduli) {
      EntireFunction f = resolve_fn(mod_fn);
      double lo, hi, step;
      if (sscanf(t_grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
        throw DomainError("bad --t-grid, want lo:hi:step");
      std::ostringstream csv;
      csv << "t,logM,logm,zero_on_circle\n";
      for (double t = lo; t <= hi + 1e-12; t += step) {
        RadialModuli m = radial_moduli(f, WideReal(t), mod_tol);
        csv << m.t.str() << "," << m.logM.str() << "," << m.logm.str() << ","
            << (m.zero_on_circle ? 1 : 0) << "\n";
      }
      emit(out_path, csv.str());
      return 0;
    }

    if (*cmd_partition) {
      EntireFunction f = resolve_fn(par_fn);
      Partition p = build_partition(f, WideReal::parse(par_logR), par_depth);
      emit(out_path, dump_report(make_report("partition", to_json(p))));
      return 0;
    }

    if (*cmd_itinerary) {
      EntireFunction f = resolve_fn(it_fn);
      Partition p = build_partition(f, WideReal::parse(it_logR), it_depth);
      ComplexPoint z = ComplexPoint::cartesian(Real(it_re), Real(it_im));
      Itinerary it = compute_itinerary(f, z, p, it_steps, it_btol);
      Json payload{{"partition", to_json(p)}, {"itinerary", to_json(it)}};
      emit(out_path, dump_report(make_report("itinerary", payload)));
      return 0;
    }

    if (*cmd_covering) {
      EntireFunction f = resolve_fn(cov_fn);
      Annulus src{WideReal::parse(cov_si), WideReal::parse(cov_so), WideReal(0)};
      Annulus tgt{WideReal::parse(cov_ti), WideReal::parse(cov_to), WideReal(0)};
      CoveringCertificate c = verify_annulus_covering(f, src, tgt, cov_tol);
      return report_and_flag(out_path, "covering", to_json(c),
                             c.verdict == Verdict::Covers);
    }

    if (*cmd_annuli) {
      EntireFunction f = resolve_fn(an_fn);
      HypothesisProfile prof = profile_by_name(an_profile);
      std::optional<double> k0;
      if (an_k0 > 0) k0 = an_k0;
      if (an_absorbing) {
        AbsorbingChain c = build_absorbing_chain(f, WideReal::parse(an_t0),
                                                 an_budget, prof, k0);
        GapAnnuli gaps = gap_annuli(c, f);
        Json payload{{"chain", to_json(c)}, {"gaps", to_json(gaps)}};
        return report_and_flag(out_path, "absorbing-chain", payload,
                               gaps.interleaving_ok);
      }
      AnnuliChain c = build_Bn_sequence(f, WideReal::parse(an_t0), an_nmax, prof,
                                        k0, an_prefer_T);
      Json payload = to_json(c);
      payload["logR"] = wide_json(align_partition(c, f));
      emit(out_path, dump_report(make_report("chain", payload)));
      return 0;
    }

    if (*cmd_synth) {
      AnnuliChain chain = chain_from_json(load_json(sy_chain));
      TransitionSystem ts = ts_from_chain(chain, sy_horizon);
      Json payload{{"transition_system", to_json(ts)}, {"mode", sy_mode}};
      bool ok = true;
      if (sy_mode == "count") {
        payload["count"] = count_admissible(ts, sy_len, sy_s0, sy_cap).str();
      } else if (sy_mode == "periodic") {
        GenResult r = gen_periodic(ts, sy_period, sy_smin);
        if (auto* seq = std::get_if<std::vector<int>>(&r)) {
          payload["sequence"] = *seq;
        } else {
          auto& u = std::get<Unrealizable>(r);
          payload["unrealizable"] = Json{{"at_index", u.at_index},
                                         {"blocking", u.blocking},
                                         {"reason", u.reason}};
          ok = false;
        }
      } else if (sy_mode == "bounded") {
        auto r = gen_bounded(ts, sy_smin, sy_smax, sy_count);
        if (auto* seqs = std::get_if<std::vector<std::vector<int>>>(&r)) {
          payload["sequences"] = *seqs;
        } else {
          auto& u = std::get<Unrealizable>(r);
          payload["unrealizable"] = Json{{"at_index", u.at_index},
                                         {"blocking", u.blocking},
                                         {"reason", u.reason}};
          ok = false;
        }
      } else if (sy_mode == "oscillating") {
        GenResult r = gen_oscillating(ts, sy_smin, parse_int_list(sy_peaks));
        if (auto* seq = std::get_if<std::vector<int>>(&r)) {
          payload["sequence"] = *seq;
        } else {
          auto& u = std::get<Unrealizable>(r);
          payload["unrealizable"] = Json{{"at_index", u.at_index},
                                         {"blocking", u.blocking},
                                         {"reason", u.reason}};
          ok = false;
        }
      } else if (sy_mode == "slow") {
        if (sy_rate.empty()) throw DomainError("--mode slow needs --rate");
        EntireFunction f = resolve_fn(sy_fn);
        WideReal logR = align_partition(chain, f);
        Partition part = build_partition(f, logR, sy_depth);
        SlowEscape s = gen_slow_escape(ts, load_rate(sy_rate, sy_logR0), part);
        payload["slow_escape"] = to_json(s);
      } else {
        throw DomainError("unknown synthesize mode '" + sy_mode + "'");
      }
      return report_and_flag(out_path, "synthesis", payload, ok);
    }

    if (*cmd_realize) {
      EntireFunction f = resolve_fn(re_fn);
      AnnuliChain chain = chain_from_json(load_json(re_chain));
      std::vector<int> seq = parse_int_list(re_seq);
      int depth = re_depth < 0 ? static_cast<int>(seq.size()) - 1 : re_depth;
      WideReal logR = align_partition(chain, f);
      RealizationResult r = realize_itinerary(f, chain, logR, seq, depth);
      Json payload = to_json(r);
      payload["logR"] = wide_json(logR);
      return report_and_flag(out_path, "realization", payload, r.complete);
    }

    if (*cmd_presc) {
      EntireFunction f = resolve_fn(pr_fn);
      AnnuliChain chain = chain_from_json(load_json(pr_chain));
      RateSpec rate = load_rate(pr_rate, pr_logR0);
      PlanMode mode = pr_bound == "power" ? PlanMode::NoMC : PlanMode::MC;
      PrescribedPlan plan = prescribed_rate_plan(f, rate, chain, mode, pr_eps);
      Json payload{{"plan", to_json(plan)}};
      bool ok = plan.bounds_ok;
      if (pr_realize) {
        int depth = pr_depth < 0 ? static_cast<int>(plan.targets.size()) - 1 : pr_depth;
        PrescribedReport rep = realize_prescribed(f, chain, plan, depth);
        payload["report"] = to_json(rep);
        ok = ok && rep.realization.complete && rep.lower_ok && rep.upper_ok;
      }
      if (pr_branching > 0) {
        try {
          payload["branching_witness"] = branching_witness(f, rate, chain, pr_branching);
        } catch (const InsufficientBranching& e) {
          payload["branching_witness_error"] = e.what();
          ok = false;
        }
      }
      return report_and_flag(out_path, "prescribed", payload, ok);
    }
  } catch (const HypothesisFailed& e) {
    emit(out_path, dump_report(make_report(
                       "error", Json{{"error", "hypothesis-failed"},
                                     {"detail", e.what()},
                                     {"failed", e.failed}})));
    return 2;
  } catch (const CeilingViolated& e) {
    emit(out_path, dump_report(make_report("error", Json{{"error", "ceiling-violated"},
                                                         {"detail", e.what()}})));
    return 2;
  } catch (const NeitherCovered& e) {
    emit(out_path, dump_report(make_report("error", Json{{"error", "neither-covered"},
                                                         {"detail", e.what()}})));
    return 2;
  } catch (const RateViolation& e) {
    emit(out_path, dump_report(make_report("error", Json{{"error", "rate-violation"},
                                                         {"detail", e.what()}})));
    return 2;
  } catch (const InsufficientBranching& e) {
    emit(out_path,
         dump_report(make_report("error", Json{{"error", "insufficient-branching"},
                                               {"detail", e.what()}})));
    return 2;
  } catch (const AnnularError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
