#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace annular {

struct AnnularError : std::runtime_error {
  explicit AnnularError(const std::string& m) : std::runtime_error(m) {}
};

struct RangeExceeded : AnnularError {
  explicit RangeExceeded(const std::string& m = "value exceeded representable range")
      : AnnularError(m) {}
};

struct DomainError : AnnularError {
  explicit DomainError(const std::string& m) : AnnularError(m) {}
};

struct InvalidR : AnnularError {
  explicit InvalidR(const std::string& m = "mu(logR) <= logR: R below escape threshold")
      : AnnularError(m) {}
};

struct IndexBeyondDepth : AnnularError {
  int last_index;
  explicit IndexBeyondDepth(int last)
      : AnnularError("modulus beyond partition depth"), last_index(last) {}
};

struct RelabelViolation : AnnularError {
  explicit RelabelViolation(const std::string& m) : AnnularError(m) {}
};

struct HypothesisFailed : AnnularError {
  std::vector<std::string> failed;
  explicit HypothesisFailed(std::vector<std::string> which)
      : AnnularError("hypothesis failed: " + join(which)), failed(std::move(which)) {}
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) {
      if (!s.empty()) s += ", ";
      s += x;
    }
    return s;
  }
};

struct Indeterminate : AnnularError {
  explicit Indeterminate(const std::string& m) : AnnularError(m) {}
};

struct NeitherCovered : AnnularError {
  explicit NeitherCovered(const std::string& m = "neither candidate annulus covered")
      : AnnularError(m) {}
};

struct BoundaryZero : AnnularError {
  explicit BoundaryZero(const std::string& m = "zero on integration boundary persists")
      : AnnularError(m) {}
};

struct NonIntegerResidual : AnnularError {
  double residual;
  explicit NonIntegerResidual(double r)
      : AnnularError("winding integral residual " + std::to_string(r)), residual(r) {}
};

struct TooShort : AnnularError {
  explicit TooShort(const std::string& m) : AnnularError(m) {}
};

struct DegenerateInnerAnnulus : AnnularError {
  int index;
  explicit DegenerateInnerAnnulus(int n)
      : AnnularError("gap annulus degenerate at entry " + std::to_string(n)), index(n) {}
};

struct CeilingViolated : AnnularError {
  explicit CeilingViolated(const std::string& m) : AnnularError(m) {}
};

struct NoFeasibleR : AnnularError {
  explicit NoFeasibleR(const std::string& m) : AnnularError(m) {}
};

struct ChainTooShort : AnnularError {
  explicit ChainTooShort(const std::string& m) : AnnularError(m) {}
};

struct RateViolation : AnnularError {
  int first_bad_n;
  explicit RateViolation(int n)
      : AnnularError("rate violates a_{n+1} <= M(a_n) at n = " + std::to_string(n)),
        first_bad_n(n) {}
};

struct InsufficientBranching : AnnularError {
  int branch_points;
  explicit InsufficientBranching(int have, int want)
      : AnnularError("only " + std::to_string(have) + " branch points, need " +
                     std::to_string(want)),
        branch_points(have) {}
};

struct NoPreimageFound : AnnularError {
  explicit NoPreimageFound(const std::string& m) : AnnularError(m) {}
};

struct DepthExceeded : AnnularError {
  explicit DepthExceeded(const std::string& m) : AnnularError(m) {}
};

} // namespace annular
