#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "annular/covering.hpp"
#include "annular/entire_function.hpp"
#include "annular/profile.hpp"
#include "annular/wide_real.hpp"

namespace annular {

enum class Origin { Seed, HarnackStep, BohrS, BohrT };

std::string origin_name(Origin o);

// One absorbing annulus B_n = A(r_n, r_n^{k_n}) in log scale. k is stored as
// k - 1: after a few max-modulus iterations delta (and with it k - 1) drops
// below any fixed-precision representation of k itself.
struct ChainEntry {
  WideReal t;     // log r_n
  WideReal km1;   // k_n - 1 > 0
  WideReal delta; // delta(r_n) = 1/sqrt(t)
  Origin origin = Origin::Seed;

  double k() const { return 1.0 + km1.to_double(); }
  WideReal kt() const { return t + km1 * t; } // log r_n^{k_n}
};

WideReal delta_w(const WideReal& t);

struct AnnuliChain {
  std::vector<ChainEntry> entries;
  std::vector<int> n_j;                // backjump (Bohr-terminal) indices
  std::vector<std::vector<int>> I_j;   // per backjump: <=1 missed earlier index
  std::vector<CoveringCertificate> certs; // certs[n]: f(B_n) >= B_{n+1}
  std::string profile;
};

struct MinModFailure {
  WideReal t_s;
};

std::variant<ChainEntry, MinModFailure> absorbing_step(
    const EntireFunction& f, const ChainEntry& entry,
    const HypothesisProfile& profile);

enum class ChainTerminal { MinMod, Budget, Saturation };

struct AbsorbingChain {
  std::vector<ChainEntry> entries;
  ChainTerminal terminal = ChainTerminal::Budget;
  std::optional<WideReal> t_s;
  std::string profile;
};

ChainEntry seed_entry(const WideReal& t0, const HypothesisProfile& profile,
                      std::optional<double> k0_override = std::nullopt);

AbsorbingChain build_absorbing_chain(const EntireFunction& f, const WideReal& t0,
                                     int budget, const HypothesisProfile& profile,
                                     std::optional<double> k0_override = std::nullopt);

struct GapAnnuli {
  std::vector<Annulus> entries;
  bool interleaving_ok = true;
};

GapAnnuli gap_annuli(const std::vector<ChainEntry>& entries,
                     const EntireFunction& f);
GapAnnuli gap_annuli(const AbsorbingChain& chain, const EntireFunction& f);

struct BohrExtension {
  ChainEntry nextS, nextT;
  CoverChoice chosen = CoverChoice::First;
  bool ceiling_ok = true;   // T' <= M((1/3) r_N^{1+delta_N})
  std::vector<int> exception; // earlier indices f(B_N) failed to cover (<=1)
  std::vector<PointCover> past; // past[m]: coverage of B_m by f(B_N)
};

// Coverage audit at a backjump: does f(B_last) reach every earlier block?
// Fills `past` per block and `exception` with the missed indices; more than
// one missed block violates the one-exception structure and throws.
void backjump_audit(const EntireFunction& f,
                    const std::vector<ChainEntry>& entries,
                    std::vector<PointCover>& past, std::vector<int>& exception);

BohrExtension extend_chain_bohr(const EntireFunction& f,
                                const std::vector<ChainEntry>& entries,
                                const WideReal& t_s,
                                const HypothesisProfile& profile,
                                bool prefer_T = false);

AnnuliChain build_Bn_sequence(const EntireFunction& f, const WideReal& t0,
                              int n_max, const HypothesisProfile& profile,
                              std::optional<double> k0_override = std::nullopt,
                              bool prefer_T = false);

WideReal align_partition(const AnnuliChain& chain, const EntireFunction& f);

// Certify f(src) >= target: boundary-moduli sufficiency first, the
// inverse-branch/winding deciders as fallback.
CoveringCertificate certify_cover(const EntireFunction& f, const Annulus& src,
                                  const Annulus& target);

} // namespace annular
