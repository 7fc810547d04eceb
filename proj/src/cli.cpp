#include "coex/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "coex/coexistence.hpp"
#include "coex/errors.hpp"
#include "coex/matrix_io.hpp"
#include "coex/region.hpp"

namespace coex {

namespace {

using nlohmann::json;

int decision_exit(Decision d) {
  switch (d) {
    case Decision::coexistent: return 0;
    case Decision::not_coexistent: return 1;
    case Decision::borderline: return 2;
  }
  return 2;
}

int error_exit(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotInAlgebra:
    case ErrorKind::NotAProjection:
    case ErrorKind::DegenerateAngle:
    case ErrorKind::RankViolation:
      return 4;
    case ErrorKind::Parse:
    case ErrorKind::NonHermitian:
      return 5;
    default:
      return 3;
  }
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

json angles_json(const TwoProjectionDecomposition& d) {
  json arr = json::array();
  for (const auto& g : d.angles) {
    arr.push_back({{"theta", g.theta}, {"h", g.h}, {"multiplicity", g.multiplicity}});
  }
  return arr;
}

json split_json(const CommSplit& s) {
  return {{"d11", s.dims[0]}, {"d10", s.dims[1]}, {"d01", s.dims[2]}, {"d00", s.dims[3]}};
}

json joint_json(const JointObservable& jo) {
  json effects = json::array();
  for (const auto& e : jo.effects) effects.push_back(matrix_to_json(e.matrix()));
  return {{"effects", effects}, {"residual", jo.residual}};
}

json verdict_json(const CoexistenceVerdict& v) {
  json j;
  j["method"] = to_string(v.method);
  j["decision"] = to_string(v.decision);
  j["min_c"] = optional_number(v.min_c);
  j["witness_theta"] = optional_number(v.witness_theta);
  json cs = json::array();
  for (double c : v.block_c) cs.push_back(number(c));
  j["block_c"] = cs;
  j["joint_observable"] = v.joint ? joint_json(*v.joint) : json(nullptr);
  return j;
}

struct Globals {
  double tol = 1e-9;
  int max_iter = 10000;
  bool json_out = false;
  bool quiet = false;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err, const Globals& g) : out_(out), err_(err), g_(g) {}

  void emit(const json& j) const {
    if (!g_.quiet) out_ << j.dump(2) << '\n';
  }

  void warn(const std::string& msg) const {
    if (!g_.quiet) err_ << "warning: " << msg << '\n';
  }

  int qubit_check(const std::vector<double>& av, const std::vector<double>& bv) const {
    const BlochEffect a = make_bloch(av[0], {av[1], av[2], av[3]});
    const BlochEffect b = make_bloch(bv[0], {bv[1], bv[2], bv[3]});
    const double c = c_function(a, b);
    const Decision d = qubit_decision(a, b, g_.tol);
    std::optional<JointObservable> joint;
    if (d != Decision::not_coexistent) {
      const Effect ea = from_bloch(a);
      const Effect eb = from_bloch(b);
      const FeasibilityResult r = feasibility_oracle(ea, eb, CoexistenceOptions{}.block_oracle);
      if (r.feasible) joint = joint_from_g(ea, eb, *r.G);
    }
    if (g_.json_out) {
      json j{{"c", c}, {"decision", to_string(d)}};
      j["joint_observable"] = joint ? joint_json(*joint) : json(nullptr);
      emit(j);
    } else if (!g_.quiet) {
      out_ << "c = " << format_number(c) << '\n' << "decision: " << to_string(d) << '\n';
      if (joint) {
        const char* names[4] = {"G1", "G2", "G3", "G4"};
        for (int k = 0; k < 4; ++k) {
          const BlochEffect gb = to_bloch(joint->effects[static_cast<std::size_t>(k)]);
          out_ << names[k] << " = (" << format_number(gb.alpha) << ", " << format_number(gb.a(0)) << ", "
               << format_number(gb.a(1)) << ", " << format_number(gb.a(2)) << ")\n";
        }
      }
    }
    return decision_exit(d);
  }

  int check(const std::string& fa, const std::string& fb, const std::string& fp1, const std::string& fp2,
            bool with_oracle) const {
    const Effect a = validate_effect(read_matrix_file(fa));
    const Effect b = validate_effect(read_matrix_file(fb));
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "A and B differ in dimension");
    if (fp1.empty() != fp2.empty()) {
      throw Error(ErrorKind::InvalidRange, "--p1 and --p2 must be given together");
    }
    std::optional<std::pair<HermitianMatrix, HermitianMatrix>> proj;
    if (!fp1.empty()) proj = std::make_pair(read_matrix_file(fp1), read_matrix_file(fp2));

    CoexistenceOptions opts;
    opts.decision_tol = g_.tol;
    OracleOptions oopts;
    oopts.tol_feas = g_.tol;
    oopts.max_iter = g_.max_iter;
    const AutoCheck res = auto_check(a, b, proj, opts, oopts);
    if (!res.note.empty()) warn(res.note);

    json j = verdict_json(res.verdict);
    if (res.decomposition) {
      j["thetas"] = angles_json(*res.decomposition);
      j["comm_split"] = split_json(res.decomposition->split);
    } else {
      j["thetas"] = json::array();
      j["comm_split"] = nullptr;
    }
    if (!res.note.empty()) j["warning"] = res.note;
    if (with_oracle) {
      const FeasibilityResult r = feasibility_oracle(a, b, oopts);
      const bool agrees = res.verdict.decision == Decision::borderline ||
                          r.status == OracleStatus::max_iter ||
                          (r.feasible == (res.verdict.decision == Decision::coexistent));
      j["oracle"] = {{"feasible", r.feasible},
                     {"status", to_string(r.status)},
                     {"iterations", r.iterations},
                     {"residual", r.residual},
                     {"certificate", r.certificate},
                     {"agrees", agrees}};
    }
    emit(j);
    return decision_exit(res.verdict.decision);
  }

  int decompose_cmd(const std::string& fp1, const std::string& fp2, bool with_basis) const {
    const HermitianMatrix p1 = read_matrix_file(fp1);
    const HermitianMatrix p2 = read_matrix_file(fp2);
    const TwoProjectionDecomposition d = decompose(p1, p2);
    json j{{"dim", d.dim},
           {"swapped", d.swapped},
           {"thetas", angles_json(d)},
           {"comm_split", split_json(d.split)},
           {"residuals", {{"canonical_form", canonical_form_residual(d, p1, p2)}}}};
    if (with_basis) j["basis"] = matrix_to_json(d.basis);
    emit(j);
    return 0;
  }

  int oracle_cmd(const std::string& fa, const std::string& fb, bool emit_g) const {
    const Effect a = validate_effect(read_matrix_file(fa));
    const Effect b = validate_effect(read_matrix_file(fb));
    OracleOptions oopts;
    oopts.tol_feas = g_.tol;
    oopts.max_iter = g_.max_iter;
    const FeasibilityResult r = feasibility_oracle(a, b, oopts);
    json j{{"feasible", r.feasible},
           {"status", to_string(r.status)},
           {"iterations", r.iterations},
           {"residual", r.residual},
           {"certificate", r.certificate}};
    if (emit_g) j["G"] = r.G ? matrix_to_json(r.G->matrix()) : json(nullptr);
    emit(j);
    switch (r.status) {
      case OracleStatus::feasible: return 0;
      case OracleStatus::infeasible:
      case OracleStatus::stalled: return 1;
      case OracleStatus::max_iter: return 2;
    }
    return 2;
  }

  int membership(const std::string& fa, const std::string& fp1, const std::string& fp2) const {
    const HermitianMatrix a = read_matrix_file(fa);
    const TwoProjectionDecomposition d = decompose(read_matrix_file(fp1), read_matrix_file(fp2));
    const AlgebraProjection p = project_to_algebra(a, d);
    const bool inside = in_algebra(a, d);
    emit({{"in_algebra", inside}, {"residual", p.residual}, {"thetas", angles_json(d)},
          {"comm_split", split_json(d.split)}});
    return inside ? 0 : 1;
  }

  int region(RegionScanSpec spec, const std::string& output, const std::string& fixtures, bool serial) const {
    if (!fixtures.empty()) {
      const RegionProblem problem(spec);
      std::filesystem::create_directories(fixtures);
      const auto base = std::filesystem::path(fixtures);
      const auto [a1, b1] = problem.effects(spec.s.hi, spec.t.hi);
      write_matrix_file((base / "p1.json").string(), problem.projections().p1.matrix());
      write_matrix_file((base / "p2.json").string(), problem.projections().p2.matrix());
      write_matrix_file((base / "a.json").string(), a1.matrix());
      write_matrix_file((base / "b.json").string(), b1.matrix());
    }
    const std::vector<RegionRow> rows = serial ? scan_region_serial(spec) : scan_region(spec);
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& r : rows) ++counts[static_cast<int>(r.decision)];
    if (output.empty() || output == "-") {
      write_region_csv(out_, rows);
      return 0;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err_ << "error: cannot write " << output << '\n';
      return 6;
    }
    write_region_csv(f, rows);
    f.close();
    if (!f) {
      err_ << "error: failed writing " << output << '\n';
      return 6;
    }
    emit({{"family", to_string(spec.family)},
          {"rows", rows.size()},
          {"coexistent", counts[0]},
          {"not_coexistent", counts[1]},
          {"borderline", counts[2]},
          {"output", output}});
    return 0;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  const Globals& g_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint measurability of effects from the algebra of two projections"};
  app.name(args.empty() ? "coexist" : args.front());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Decision / feasibility tolerance")->capture_default_str();
  app.add_option("--max-iter", g.max_iter, "Oracle iteration limit")->capture_default_str();
  app.add_flag("--json", g.json_out, "JSON output where text is the default");
  app.add_flag("--quiet", g.quiet, "Suppress reports; exit code only");

  std::vector<double> qa, qb;
  auto* qc = app.add_subcommand("qubit-check", "Qubit criterion for two Bloch effects");
  qc->add_option("--a", qa, "alpha ax ay az")->expected(4)->required()->allow_extra_args(false);
  qc->add_option("--b", qb, "beta bx by bz")->expected(4)->required()->allow_extra_args(false);

  std::string fa, fb, fp1, fp2;
  bool with_oracle = false;
  auto* ck = app.add_subcommand("check", "Decide coexistence of two effects from matrix files");
  ck->add_option("a", fa, "Effect A (matrix file)")->required();
  ck->add_option("b", fb, "Effect B (matrix file)")->required();
  ck->add_option("--p1", fp1, "First projection generating the algebra");
  ck->add_option("--p2", fp2, "Second projection generating the algebra");
  ck->add_flag("--oracle", with_oracle, "Cross-check with the feasibility oracle");

  std::string dp1, dp2;
  bool with_basis = false;
  auto* dc = app.add_subcommand("decompose", "Canonical decomposition of a projection pair");
  dc->add_option("p1", dp1)->required();
  dc->add_option("p2", dp2)->required();
  dc->add_flag("--basis", with_basis, "Include the canonical basis");

  std::string oa, ob;
  bool emit_g = false;
  auto* oc = app.add_subcommand("oracle", "Feasibility oracle for two effects");
  oc->add_option("a", oa)->required();
  oc->add_option("b", ob)->required();
  oc->add_flag("--emit-g", emit_g, "Include the feasible G");

  std::string ma, mp1, mp2;
  auto* mc = app.add_subcommand("membership", "Test whether an operator lies in the algebra of P1, P2");
  mc->add_option("a", ma)->required();
  mc->add_option("p1", mp1)->required();
  mc->add_option("p2", mp2)->required();

  std::string family = "dim3_sum", output, fixtures, ra, rb, rp1, rp2;
  std::vector<double> srange{0.0, 1.0, 101}, trange{0.0, 1.0, 101};
  double overlap = 0.70710678118654752;
  int copies = 1;
  bool serial = false;
  auto* rc = app.add_subcommand("region", "Scan a two-parameter family and write CSV");
  rc->add_option("--family", family, "dim3_sum | dim4_sandwich | scaled_rank1 | custom_block")
      ->capture_default_str();
  rc->add_option("--s", srange, "lo hi steps (default: the valid range, 101 steps)")->expected(3);
  rc->add_option("--t", trange, "lo hi steps")->expected(3);
  rc->add_option("--output", output, "CSV path (stdout when omitted)");
  rc->add_option("--overlap", overlap, "|<psi1|psi2>| for scaled_rank1")->capture_default_str();
  rc->add_option("--copies", copies, "Tensor copies for scaled_rank1")->capture_default_str();
  rc->add_option("--a", ra, "custom_block: effect X");
  rc->add_option("--b", rb, "custom_block: effect Y");
  rc->add_option("--p1", rp1, "custom_block: projection P1");
  rc->add_option("--p2", rp2, "custom_block: projection P2");
  rc->add_option("--emit-fixtures", fixtures, "Write P1, P2 and the corner effects to this directory");
  rc->add_flag("--serial", serial, "Use the single-threaded reference scan");

  std::vector<std::string> argv_store(args.begin(), args.end());
  if (argv_store.empty()) argv_store.emplace_back("coexist");
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }

  const Runner run(out, err, g);
  try {
    if (*qc) return run.qubit_check(qa, qb);
    if (*ck) return run.check(fa, fb, fp1, fp2, with_oracle);
    if (*dc) return run.decompose_cmd(dp1, dp2, with_basis);
    if (*oc) return run.oracle_cmd(oa, ob, emit_g);
    if (*mc) return run.membership(ma, mp1, mp2);
    if (*rc) {
      const auto fam = parse_family(family);
      if (!fam) {
        err << "error: unknown family " << family << '\n';
        return 3;
      }
      RegionScanSpec spec;
      spec.family = *fam;
      if (rc->count("--s") == 0 && *fam == Family::dim3_sum) srange[1] = dim3_s_max();
      if (rc->count("--t") == 0 && *fam == Family::dim3_sum) trange[1] = dim3_t_max();
      spec.s = {srange[0], srange[1], static_cast<int>(srange[2])};
      spec.t = {trange[0], trange[1], static_cast<int>(trange[2])};
      spec.overlap = overlap;
      spec.copies = copies;
      if (*fam == Family::custom_block) {
        if (ra.empty() || rb.empty() || rp1.empty() || rp2.empty()) {
          err << "error: custom_block needs --a, --b, --p1 and --p2\n";
          return 3;
        }
        spec.custom_a = read_matrix_file(ra);
        spec.custom_b = read_matrix_file(rb);
        spec.custom_p1 = read_matrix_file(rp1);
        spec.custom_p2 = read_matrix_file(rp2);
      }
      return run.region(spec, output, fixtures, serial);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return error_exit(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 6;
  }
  return 3;
}

}  // namespace coex
