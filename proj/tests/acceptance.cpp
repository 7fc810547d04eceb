// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "coex/coexistence.hpp"
#include "coex/families.hpp"
#include "coex/region.hpp"
#include "support/random.hpp"

using namespace coex;
using namespace coex::testing;

namespace {

const double kRt2 = std::sqrt(2.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = o.pass;
  if (limit_s > 0 && secs >= limit_s) {
    pass = false;
    o.detail += " (time limit " + std::to_string(limit_s) + " s exceeded)";
  }
  if (!pass) ++failures;
  std::printf("%s %s: %s [%.3f s] %s\n", id, pass ? "PASS" : "FAIL", title, secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

/// Largest x in [lo, hi] with pred(x) true, assuming pred is true then false.
double bisect(double lo, double hi, const std::function<bool(double)>& pred, double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Boundary of the C³ family, written out independently of the library. Both
// quadratic factors vanish on the far edges of the grid and can round below 0.
double quartic(double s, double t) {
  const double rad = 2 * (2 * s * s - 6 * s + 3) * (t * t - 6 * t + 3);
  return std::sqrt(std::max(rad, 0.0)) + 16 * s * t - 12 * s - 15 * t + 9;
}

OracleOptions oracle_budget() {
  OracleOptions o;
  o.max_iter = 200000;
  return o;
}

Outcome ac1() {
  const HermitianMatrix px = qubit_projection(1, 0, 0);
  const HermitianMatrix py = qubit_projection(0, 1, 0);
  const double s = bisect(
      0.0, 1.0,
      [&](double x) { return c_function(to_bloch(validate_effect(x * px)), to_bloch(validate_effect(x * py))) >= 0; },
      1e-13);
  const double err = std::abs(s - (2 - kRt2));
  return {err < 1e-9, fmt("s* = %.15f", s) + fmt(", |s* - (2 - sqrt 2)| = %.2e", err)};
}

Outcome ac2() {
  RegionScanSpec spec;
  spec.family = Family::dim3_sum;
  spec.s = {0.0, (3 - std::sqrt(3.0)) / 2, 200};
  spec.t = {0.0, 3 - std::sqrt(6.0), 200};
  const auto rows = scan_region(spec);
  int compared = 0, mismatched = 0;
  for (const RegionRow& r : rows) {
    const double q = quartic(r.s, r.t);
    if (std::abs(q) <= 1e-6) continue;
    ++compared;
    if (r.decision != (q > 0 ? Decision::coexistent : Decision::not_coexistent)) ++mismatched;
  }
  return {rows.size() == 40000 && mismatched == 0,
          std::to_string(compared) + " grid points compared, " + std::to_string(mismatched) + " mismatches"};
}

Outcome ac3() {
  const ProjectionPair fp = fourier_pair();
  const auto d = decompose(fp.p1, fp.p2);
  bool angles_ok = d.angles.size() == 2 && std::abs(d.angles[0].theta - M_PI / 4) < 1e-10 &&
                   std::abs(d.angles[1].theta - 3 * M_PI / 4) < 1e-10;
  const Effect a = validate_effect(sandwich(fp.p1, fp.p2));
  const HermitianMatrix base_b = sandwich(fp.p2, fp.p1);
  CoexistenceOptions opts;
  opts.build_joint = false;
  const double t = bisect(
      0.0, 1.0,
      [&](double x) { return *coexistent_in_algebra(a, validate_effect(x * base_b), d, opts).min_c >= 0; }, 1e-12);
  const double target = 8 * (3 - 2 * kRt2) / 7;
  const double err = std::abs(t - target);
  return {angles_ok && err < 1e-8,
          std::string(angles_ok ? "angles pi/4, 3pi/4" : "angles wrong") + fmt(", t* = %.12f", t) +
              fmt(", error %.2e", err)};
}

Outcome ac4() {
  const double e1 = std::abs(copies_bound(1 / kRt2, 1) - (2 - kRt2));
  const double e2 = std::abs(copies_bound(1 / kRt2, 2) - std::sqrt(2.0 / 3.0));
  const Matrix a1 = (1 / kRt2 * qubit_projection(0, 0, 1)).matrix();
  const Matrix b1 = (1 / kRt2 * qubit_projection(1, 0, 0)).matrix();
  const auto factor = feasibility_oracle(validate_effect(a1), validate_effect(b1));
  const auto tensor =
      feasibility_oracle(validate_effect(HermitianMatrix(kron(a1, a1))), validate_effect(HermitianMatrix(kron(b1, b1))));
  const bool ok = e1 < 1e-12 && e2 < 1e-12 && !factor.feasible && factor.status != OracleStatus::max_iter &&
                  tensor.feasible;
  return {ok, fmt("bound errors %.1e", e1) + fmt(" / %.1e", e2) + ", factor " + to_string(factor.status) +
                  ", tensor " + to_string(tensor.status)};
}

Outcome ac5() {
  Rng rng(505);
  int compared = 0, mismatched = 0;
  while (compared < 1000) {
    const double s = uniform(rng);
    const double t = uniform(rng);
    if (std::abs(s + t - 1) <= 1e-6) continue;
    ++compared;
    const auto r = scaled_central_check([s](double) { return s; }, [t](double) { return t; }, HSpectrum::range(0, 1));
    if (r.coexistent != (s + t <= 1)) ++mismatched;
  }
  return {mismatched == 0, std::to_string(compared) + " pairs, " + std::to_string(mismatched) + " mismatches"};
}

Outcome ac6() {
  Rng rng(606);
  int qubit = 0, qubit_bad = 0, alg = 0, alg_bad = 0, skipped = 0;
  while (qubit < 500) {
    const BlochEffect a = random_bloch(rng);
    const BlochEffect b = random_bloch(rng);
    const double c = c_function(a, b);
    if (std::abs(c) <= 1e-6) {
      ++skipped;
      continue;
    }
    ++qubit;
    const auto r = feasibility_oracle(from_bloch(a), from_bloch(b), oracle_budget());
    if (r.status == OracleStatus::max_iter || r.feasible != (c > 0)) ++qubit_bad;
  }
  CoexistenceOptions opts;
  opts.build_joint = false;
  while (alg < 200) {
    const auto rp = random_projection_pair(rng, uniform_int(rng, 2, 8));
    const auto d = decompose(rp.p1, rp.p2);
    const Effect a = validate_effect(reconstruct(random_block_effect(rng, d), d));
    const Effect b = validate_effect(reconstruct(random_block_effect(rng, d), d));
    const auto v = coexistent_in_algebra(a, b, d, opts);
    if (v.min_c && std::abs(*v.min_c) <= 1e-6) {
      ++skipped;
      continue;
    }
    ++alg;
    const auto r = feasibility_oracle(a, b, oracle_budget());
    if (r.status == OracleStatus::max_iter || r.feasible != (v.decision == Decision::coexistent)) ++alg_bad;
  }
  return {qubit_bad == 0 && alg_bad == 0,
          std::to_string(qubit) + " qubit pairs (" + std::to_string(qubit_bad) + " disagree), " + std::to_string(alg) +
              " algebra pairs (" + std::to_string(alg_bad) + " disagree), " + std::to_string(skipped) +
              " in the band skipped"};
}

Outcome ac7() {
  Rng rng(707);
  int compared = 0, mismatched = 0, skipped = 0;
  while (compared < 200) {
    const auto rp = random_projection_pair(rng, uniform_int(rng, 2, 8));
    const auto d = decompose(rp.p1, rp.p2);
    const Bernstein f1 = random_bernstein(rng);
    const Bernstein f2 = random_bernstein(rng);
    const auto r = ginf_equals_coexistence_check(f1, f2, rp.p1, rp.p2, d);
    if (std::abs(r.infimum) <= 1e-6) {
      ++skipped;
      continue;
    }
    ++compared;
    if (r.ginf != r.coex) ++mismatched;
  }
  return {mismatched == 0, std::to_string(compared) + " instances, " + std::to_string(mismatched) + " mismatches, " +
                               std::to_string(skipped) + " in the band skipped"};
}

Outcome ac8() {
  Rng rng(808);
  double worst_canon = 0, worst_round = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto rp = random_projection_pair(rng, uniform_int(rng, 2, 8));
    const auto d = decompose(rp.p1, rp.p2);
    worst_canon = std::max(worst_canon, canonical_form_residual(d, rp.p1, rp.p2));
    const HermitianMatrix x = reconstruct(random_block_effect(rng, d), d);
    for (const HermitianMatrix* m : {&rp.p1, &rp.p2, &x}) {
      worst_round = std::max(worst_round, max_abs_diff(reconstruct(block_of(*m, d), d).matrix(), m->matrix()));
    }
  }
  double worst_sym = 0, worst_comp = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const BlochEffect a = random_bloch(rng);
    const BlochEffect b = random_bloch(rng);
    const double c = c_function(a, b);
    worst_sym = std::max(worst_sym, std::abs(c_function(b, a) - c));
    worst_comp = std::max({worst_comp, std::abs(c_function(a.complement(), b) - c),
                           std::abs(c_function(a, b.complement()) - c),
                           std::abs(c_function(a.complement(), b.complement()) - c)});
  }
  const bool ok = worst_canon < 1e-9 && worst_round < 1e-9 && worst_sym <= 1e-12 && worst_comp <= 1e-12;
  return {ok, fmt("canonical %.1e", worst_canon) + fmt(", round trip %.1e", worst_round) +
                  fmt(", symmetry %.1e", worst_sym) + fmt(", complement %.1e", worst_comp)};
}

}  // namespace

int main() {
  report("AC1", "qubit threshold 2 - sqrt 2 by bisection", 1.0, ac1);
  report("AC2", "C3 region matches the quartic boundary", 10.0, ac2);
  report("AC3", "Fourier pair angles and threshold 8(3 - 2 sqrt 2)/7", 0.0, ac3);
  report("AC4", "copies bounds and tensor example", 0.0, ac4);
  report("AC5", "constant scalings on [0, 1]: s + t <= 1", 5.0, ac5);
  report("AC6", "criterion agrees with the feasibility oracle", 60.0, ac6);
  report("AC7", "generalized infimum equals coexistence", 0.0, ac7);
  report("AC8", "structural invariants", 0.0, ac8);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
