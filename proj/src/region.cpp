#include "coex/region.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#include "coex/errors.hpp"

namespace coex {

const char* to_string(Family f) {
  switch (f) {
    case Family::dim3_sum: return "dim3_sum";
    case Family::dim4_sandwich: return "dim4_sandwich";
    case Family::scaled_rank1: return "scaled_rank1";
    case Family::custom_block: return "custom_block";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::dim3_sum, Family::dim4_sandwich, Family::scaled_rank1, Family::custom_block}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

double GridRange::at(int i) const {
  if (i == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

void check_range(const GridRange& r, double max, const char* name) {
  if (r.steps < 2) throw Error(ErrorKind::InvalidRange, std::string(name) + " range needs at least 2 steps", r.steps);
  if (!(r.lo >= 0.0 && r.lo <= r.hi && r.hi <= max + 1e-12)) {
    throw Error(ErrorKind::InvalidRange,
                std::string(name) + " range must satisfy 0 <= lo <= hi <= " + format_number(max), r.hi);
  }
}

}  // namespace

RegionProblem::RegionProblem(const RegionScanSpec& spec) : spec_(spec) {
  double s_max = 1.0, t_max = 1.0;
  switch (spec.family) {
    case Family::dim3_sum: {
      pair_ = dim3_pair();
      const HermitianMatrix id = HermitianMatrix::identity(3);
      base_a_ = pair_.p1 + pair_.p2;
      base_b_ = pair_.p1 + (id - pair_.p2);
      s_max = dim3_s_max();
      t_max = dim3_t_max();
      break;
    }
    case Family::dim4_sandwich:
      pair_ = fourier_pair();
      base_a_ = sandwich(pair_.p1, pair_.p2);
      base_b_ = sandwich(pair_.p2, pair_.p1);
      break;
    case Family::scaled_rank1:
      if (spec.copies < 1 || spec.copies > 6) throw Error(ErrorKind::InvalidRange, "copies must lie in 1..6", spec.copies);
      pair_ = rank1_pair(spec.overlap, spec.copies);
      base_a_ = pair_.p1;
      base_b_ = pair_.p2;
      break;
    case Family::custom_block:
      if (!spec.custom_a || !spec.custom_b || !spec.custom_p1 || !spec.custom_p2) {
        throw Error(ErrorKind::InvalidRange, "custom_block needs A, B, P1 and P2");
      }
      pair_ = {*spec.custom_p1, *spec.custom_p2};
      base_a_ = validate_effect(*spec.custom_a);
      base_b_ = validate_effect(*spec.custom_b);
      break;
  }
  check_range(spec.s, s_max, "s");
  check_range(spec.t, t_max, "t");
  decomposition_ = decompose(pair_.p1, pair_.p2);
  if (spec.family == Family::custom_block) {
    block_of(base_a_, decomposition_);
    block_of(base_b_, decomposition_);
  }
}

std::pair<Effect, Effect> RegionProblem::effects(double s, double t) const {
  double sa = s, tb = t;
  if (spec_.family == Family::scaled_rank1) {
    sa = std::pow(s, spec_.copies);
    tb = std::pow(t, spec_.copies);
  }
  return {validate_effect(sa * base_a_), validate_effect(tb * base_b_)};
}

std::optional<double> RegionProblem::analytic(double s, double t) const {
  switch (spec_.family) {
    case Family::dim3_sum: return dim3_boundary(s, t);
    case Family::dim4_sandwich: return dim4_boundary(s, t);
    case Family::scaled_rank1: return rank1_boundary(s, t, spec_.overlap, spec_.copies);
    case Family::custom_block: return std::nullopt;
  }
  return std::nullopt;
}

CoexistenceVerdict RegionProblem::verdict(double s, double t) const {
  const auto [a, b] = effects(s, t);
  CoexistenceOptions opts;
  opts.build_joint = false;
  opts.decision_tol = tol_;
  return coexistent_in_algebra(a, b, decomposition_, opts);
}

RegionRow RegionProblem::evaluate(double s, double t) const {
  const auto [a, b] = effects(s, t);
  CoexistenceOptions opts;
  opts.build_joint = false;
  opts.decision_tol = tol_;
  const CoexistenceVerdict v = coexistent_in_algebra(a, b, decomposition_, opts);
  RegionRow row;
  row.s = s;
  row.t = t;
  row.decision = v.decision;
  row.min_c = v.min_c;
  row.ginf = ginf_condition(a, b);
  row.commute = commute(a, b);
  row.comparable = comparable(a, b);
  row.analytic = analytic(s, t);
  return row;
}

std::vector<RegionRow> scan_region_serial(const RegionScanSpec& spec) {
  const RegionProblem problem(spec);
  std::vector<RegionRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.s.steps) * static_cast<std::size_t>(spec.t.steps));
  for (int i = 0; i < spec.s.steps; ++i) {
    for (int j = 0; j < spec.t.steps; ++j) rows.push_back(problem.evaluate(spec.s.at(i), spec.t.at(j)));
  }
  return rows;
}

std::vector<RegionRow> scan_region(const RegionScanSpec& spec) {
  const RegionProblem problem(spec);
  const int ns = spec.s.steps;
  const int nt = spec.t.steps;
  std::vector<RegionRow> rows(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt));
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < ns; ++i) {
    try {
      for (int j = 0; j < nt; ++j) {
        rows[static_cast<std::size_t>(i) * static_cast<std::size_t>(nt) + static_cast<std::size_t>(j)] =
            problem.evaluate(spec.s.at(i), spec.t.at(j));
      }
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows) {
  bool with_analytic = false;
  for (const auto& r : rows) with_analytic = with_analytic || r.analytic.has_value();
  os << "s,t,decision,min_c,ginf,commute,comparable";
  if (with_analytic) os << ",analytic";
  os << '\n';
  for (const auto& r : rows) {
    os << format_number(r.s) << ',' << format_number(r.t) << ',' << to_string(r.decision) << ','
       << (r.min_c ? format_number(*r.min_c) : std::string()) << ',' << int(r.ginf) << ','
       << int(r.commute) << ',' << int(r.comparable);
    if (with_analytic) os << ',' << (r.analytic ? format_number(*r.analytic) : std::string());
    os << '\n';
  }
}

}  // namespace coex
