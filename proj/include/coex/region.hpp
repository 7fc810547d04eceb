#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coex/coexistence.hpp"
#include "coex/families.hpp"

namespace coex {

enum class Family { dim3_sum, dim4_sandwich, scaled_rank1, custom_block };

const char* to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

struct GridRange {
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;

  double at(int i) const;
};

/// Two-parameter family of effect pairs A_s, B_t and the grid to scan.
///
///   dim3_sum       A_s = s(P1 + P2),     B_t = t(P1 + P2⊥)   on C³
///   dim4_sandwich  A_s = s P1 P2 P1,     B_t = t P2 P1 P2    on C⁴
///   scaled_rank1   A_s = (s P1)^{⊗n},    B_t = (t P2)^{⊗n}   rank-1 P1, P2 in C²
///   custom_block   A_s = s X,            B_t = t Y           X, Y in the algebra of (P1, P2)
struct RegionScanSpec {
  Family family = Family::dim3_sum;
  GridRange s;
  GridRange t;
  double overlap = 0.70710678118654752;
  int copies = 1;
  std::optional<HermitianMatrix> custom_a;
  std::optional<HermitianMatrix> custom_b;
  std::optional<HermitianMatrix> custom_p1;
  std::optional<HermitianMatrix> custom_p2;
};

struct RegionRow {
  double s = 0.0;
  double t = 0.0;
  Decision decision = Decision::borderline;
  std::optional<double> min_c;
  bool ginf = false;
  bool commute = false;
  bool comparable = false;
  std::optional<double> analytic;
};

/// Fixed data of a scan: the projection pair and its decomposition, built
/// once and shared read-only by every grid point.
class RegionProblem {
 public:
  explicit RegionProblem(const RegionScanSpec& spec);

  std::pair<Effect, Effect> effects(double s, double t) const;
  /// Closed-form boundary expression, nonnegative iff coexistent; empty for
  /// custom_block.
  std::optional<double> analytic(double s, double t) const;
  RegionRow evaluate(double s, double t) const;
  /// Blockwise verdict only, without the sufficient-condition columns.
  CoexistenceVerdict verdict(double s, double t) const;

  const RegionScanSpec& spec() const { return spec_; }
  const ProjectionPair& projections() const { return pair_; }
  const TwoProjectionDecomposition& decomposition() const { return decomposition_; }

 private:
  RegionScanSpec spec_;
  ProjectionPair pair_;
  TwoProjectionDecomposition decomposition_;
  HermitianMatrix base_a_;
  HermitianMatrix base_b_;
  double tol_ = kDecisionTol;
};

/// Reference implementation: one thread, s outer, t inner.
std::vector<RegionRow> scan_region_serial(const RegionScanSpec& spec);

/// OpenMP over s rows; output order identical to the serial scan.
std::vector<RegionRow> scan_region(const RegionScanSpec& spec);

/// Columns s,t,decision,min_c,ginf,commute,comparable and, when any row
/// carries one, analytic. Numbers use 12 significant digits; '\n' endings.
void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows);

std::string format_number(double v);

}  // namespace coex
