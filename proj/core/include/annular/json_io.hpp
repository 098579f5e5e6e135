#pragma once

#include <string>

#include <json.hpp>

#include "annular/chain.hpp"
#include "annular/covering.hpp"
#include "annular/partition.hpp"
#include "annular/radial_moduli.hpp"
#include "annular/realize.hpp"
#include "annular/synthesis.hpp"

namespace annular {

// All reports share one envelope: {"schema": "annular-dyn/1", "kind": ...,
// "payload": ...}. WideReal values are serialized through their canonical
// decimal form so output is byte-stable across runs.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "annular-dyn/1";

Json wide_json(const WideReal& w);
WideReal wide_from_json(const Json& j);

Json to_json(const Annulus& a);
Json to_json(const CoveringCertificate& c);
Json to_json(const RadialModuli& m);
Json to_json(const ChainEntry& e);
Json to_json(const AbsorbingChain& c);
Json to_json(const AnnuliChain& c);
Json to_json(const GapAnnuli& g);
Json to_json(const Partition& p);
Json to_json(const Itinerary& it);
Json to_json(const HarnackReport& r);
Json to_json(const BohrReport& r);
Json to_json(const TransitionSystem& ts);
Json to_json(const SlowEscape& s);
Json to_json(const PrescribedPlan& p);
Json to_json(const RealizationResult& r);
Json to_json(const PrescribedReport& r);

// Inverse parsers for the artifacts other commands consume. Accepts either
// the bare payload or the full {"schema", "kind", "payload"} envelope.
ChainEntry entry_from_json(const Json& j);
AnnuliChain chain_from_json(const Json& j);
AbsorbingChain absorbing_from_json(const Json& j);

Json make_report(const std::string& kind, Json payload);
std::string dump_report(const Json& j);
void write_report(const std::string& path, const Json& j);

} // namespace annular
