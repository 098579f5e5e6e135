#include "annular/json_io.hpp"

#include <fstream>

#include "annular/errors.hpp"

namespace annular {

namespace {

const char* terminal_name(ChainTerminal t) {
  switch (t) {
    case ChainTerminal::MinMod: return "min-mod";
    case ChainTerminal::Budget: return "budget";
    case ChainTerminal::Saturation: return "saturation";
  }
  return "?";
}

const char* trunc_name(TruncationReason r) {
  switch (r) {
    case TruncationReason::CompleteToDepth: return "complete-to-depth";
    case TruncationReason::RangeExceeded: return "range-exceeded";
    case TruncationReason::LeftPartitionNever: return "left-partition";
  }
  return "?";
}

const char* bohr_verdict_name(BohrVerdict v) {
  switch (v) {
    case BohrVerdict::FullCover: return "full-cover";
    case BohrVerdict::OneDiscException: return "one-disc-exception";
    case BohrVerdict::Violation: return "violation";
  }
  return "?";
}

const char* bound_kind_name(BoundKind k) {
  return k == BoundKind::M2 ? "M2" : "power-1+eps";
}

Json wide_vec(const std::vector<WideReal>& v) {
  Json a = Json::array();
  for (const auto& w : v) a.push_back(wide_json(w));
  return a;
}

} // namespace

Json wide_json(const WideReal& w) { return Json(w.str()); }

WideReal wide_from_json(const Json& j) {
  if (j.is_string()) return WideReal::parse(j.get<std::string>());
  return WideReal(j.get<double>());
}

Json to_json(const Annulus& a) {
  return Json{{"t_in", wide_json(a.t_in)},
              {"t_out", wide_json(a.t_out)},
              {"log_width", wide_json(a.width())}};
}

Json to_json(const CoveringCertificate& c) {
  return Json{{"source", to_json(c.source)},
              {"target", to_json(c.target)},
              {"inner_logM", wide_json(c.inner_logM)},
              {"outer_logm", wide_json(c.outer_logm)},
              {"margin", c.margin},
              {"verdict", verdict_name(c.verdict)}};
}

Json to_json(const RadialModuli& m) {
  return Json{{"t", wide_json(m.t)},
              {"logM", wide_json(m.logM)},
              {"logm", wide_json(m.logm)},
              {"tol", m.tol},
              {"n_samples", m.n_samples},
              {"zero_on_circle", m.zero_on_circle}};
}

Json to_json(const ChainEntry& e) {
  return Json{{"t", wide_json(e.t)},
              {"km1", wide_json(e.km1)},
              {"delta", wide_json(e.delta)},
              {"origin", origin_name(e.origin)}};
}

Json to_json(const AbsorbingChain& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) entries.push_back(to_json(e));
  Json j{{"entries", entries},
         {"terminal", terminal_name(c.terminal)},
         {"profile", c.profile}};
  if (c.t_s) j["t_s"] = wide_json(*c.t_s);
  return j;
}

Json to_json(const AnnuliChain& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) entries.push_back(to_json(e));
  Json certs = Json::array();
  for (const auto& ct : c.certs) certs.push_back(to_json(ct));
  return Json{{"entries", entries},
              {"n_j", c.n_j},
              {"I_j", c.I_j},
              {"certs", certs},
              {"profile", c.profile}};
}

Json to_json(const GapAnnuli& g) {
  Json entries = Json::array();
  for (const auto& a : g.entries) entries.push_back(to_json(a));
  return Json{{"entries", entries}, {"interleaving_ok", g.interleaving_ok}};
}

Json to_json(const Partition& p) {
  Json j{{"logR", wide_json(p.logR)},
         {"levels", wide_vec(p.levels)},
         {"depth", p.depth}};
  if (p.saturated_at) j["saturated_at"] = *p.saturated_at;
  return j;
}

Json to_json(const Itinerary& it) {
  return Json{{"symbols", it.symbols},
              {"truncated", it.truncated},
              {"reason", trunc_name(it.reason)},
              {"ambiguous", it.ambiguous}};
}

Json to_json(const HarnackReport& r) {
  return Json{{"t", r.t},
              {"k", r.k},
              {"delta", r.delta},
              {"profile", r.profile},
              {"hyp_growth", r.hyp_growth},
              {"hyp_sqrt", r.hyp_sqrt},
              {"hyp_delta", r.hyp_delta},
              {"hyp_mbig", r.hyp_mbig},
              {"part_a_margin", r.part_a_margin},
              {"logR_out", wide_json(r.logR_out)},
              {"K", r.K},
              {"outer_cert", to_json(r.outer_cert)},
              {"inside_applicable", r.inside_applicable},
              {"inside_ok", r.inside_ok}};
}

Json to_json(const BohrReport& r) {
  Json unc = Json::array();
  for (const auto& u : r.uncovered)
    unc.push_back(Json{{"logmod", u.logmod}, {"arg", u.arg}});
  return Json{{"t", r.t},
              {"s_witness", wide_json(r.s_witness)},
              {"grid_size", r.grid_size},
              {"uncovered", unc},
              {"indeterminate", r.indeterminate},
              {"w1_logmod", r.w1_logmod},
              {"w1_arg", r.w1_arg},
              {"eps_bound", r.eps_bound},
              {"verdict", bohr_verdict_name(r.verdict)}};
}

Json to_json(const TransitionSystem& ts) {
  return Json{{"n_j", ts.n_j}, {"I_j", ts.I_j}, {"horizon", ts.horizon}};
}

Json to_json(const SlowEscape& s) {
  return Json{{"symbols", s.symbols},
              {"truncated", s.truncated},
              {"loiter_lengths", s.loiter_lengths}};
}

Json to_json(const PrescribedPlan& p) {
  return Json{{"targets", p.targets},
              {"n_j_out", p.n_j_out},
              {"bound_kind", bound_kind_name(p.bound_kind)},
              {"log_a", wide_vec(p.log_a)},
              {"upper_bounds", wide_vec(p.upper_bounds)},
              {"bounds_ok", p.bounds_ok},
              {"eps", p.eps}};
}

Json to_json(const RealizationResult& r) {
  Json point{{"logmod", wide_json(r.point.logmod)},
             {"arg", r.point.arg.str(40)},
             {"plain", r.point.plain}};
  if (r.point.plain) {
    point["re"] = r.point.re.str(40);
    point["im"] = r.point.im.str(40);
  }
  Json j{{"point", point},
         {"requested", r.requested},
         {"verified_len", r.verified_len},
         {"residuals", r.residuals},
         {"orbit_logmod", wide_vec(r.orbit_logmod)},
         {"stats", Json{{"iterations", r.stats.iterations},
                        {"restarts", r.stats.restarts},
                        {"escalations", r.stats.escalations}}},
         {"complete", r.complete}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const PrescribedReport& r) {
  return Json{{"realization", to_json(r.realization)},
              {"lower_margins", r.lower_margins},
              {"upper_margins", r.upper_margins},
              {"lower_ok", r.lower_ok},
              {"upper_ok", r.upper_ok}};
}

namespace {

Origin origin_from_name(const std::string& s) {
  if (s == "seed") return Origin::Seed;
  if (s == "harnack-step") return Origin::HarnackStep;
  if (s == "bohr-S") return Origin::BohrS;
  if (s == "bohr-T") return Origin::BohrT;
  throw DomainError("unknown chain-entry origin '" + s + "'");
}

const Json& unwrap(const Json& j) {
  if (j.is_object() && j.contains("payload")) return j.at("payload");
  return j;
}

ChainTerminal terminal_from_name(const std::string& s) {
  if (s == "min-mod") return ChainTerminal::MinMod;
  if (s == "budget") return ChainTerminal::Budget;
  if (s == "saturation") return ChainTerminal::Saturation;
  throw DomainError("unknown chain terminal '" + s + "'");
}

} // namespace

ChainEntry entry_from_json(const Json& j) {
  ChainEntry e;
  e.t = wide_from_json(j.at("t"));
  e.km1 = wide_from_json(j.at("km1"));
  e.delta = wide_from_json(j.at("delta"));
  e.origin = origin_from_name(j.at("origin").get<std::string>());
  return e;
}

AnnuliChain chain_from_json(const Json& j) {
  const Json& p = unwrap(j);
  AnnuliChain c;
  for (const auto& e : p.at("entries")) c.entries.push_back(entry_from_json(e));
  c.n_j = p.at("n_j").get<std::vector<int>>();
  c.I_j = p.at("I_j").get<std::vector<std::vector<int>>>();
  if (p.contains("profile")) c.profile = p.at("profile").get<std::string>();
  return c;
}

AbsorbingChain absorbing_from_json(const Json& j) {
  const Json& p = unwrap(j);
  AbsorbingChain c;
  for (const auto& e : p.at("entries")) c.entries.push_back(entry_from_json(e));
  c.terminal = terminal_from_name(p.at("terminal").get<std::string>());
  if (p.contains("t_s")) c.t_s = wide_from_json(p.at("t_s"));
  if (p.contains("profile")) c.profile = p.at("profile").get<std::string>();
  return c;
}

Json make_report(const std::string& kind, Json payload) {
  return Json{{"schema", kSchema}, {"kind", kind}, {"payload", std::move(payload)}};
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

void write_report(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open output file " + path);
  out << dump_report(j);
}

} // namespace annular
