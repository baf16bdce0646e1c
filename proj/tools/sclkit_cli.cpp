// Command-line front end: certified scl/mixed-scl bounds, exact fills with
// dual certificates, quasimorphism defects, commutator search and labelled
// surfaces.
//
// Exit codes: 0 ok, 1 violation detected, 2 usage or parse error,
// 3 infeasible or unknown.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sclkit/circle.hpp"
#include "sclkit/commutator.hpp"
#include "sclkit/config_io.hpp"
#include "sclkit/lp.hpp"
#include "sclkit/qm.hpp"
#include "sclkit/scl.hpp"
#include "sclkit/surface.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace sclkit;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kInfeasible = 3;

bool g_quiet = false;

void note(const std::string& line) {
  if (!g_quiet) std::cerr << line << "\n";
}

void emit(const Json& report, const std::string& out_path) {
  if (!out_path.empty()) write_json_file(out_path, report);
  std::cout << report.dump(2) << "\n";
}

SearchBudget parse_budget(const std::string& text) {
  SearchBudget b;
  std::istringstream ss(text);
  std::string part;
  std::vector<int> vals;
  while (std::getline(ss, part, ':')) vals.push_back(std::stoi(part));
  if (vals.empty() || vals.size() > 3) throw CLI::ValidationError("budget", "expected k:len[:conj]");
  b.max_commutators = vals[0];
  if (vals.size() > 1) b.max_word_len = vals[1];
  if (vals.size() > 2) b.conjugator_len = vals[2];
  return b;
}

std::vector<long> parse_powers(const std::string& text) {
  std::vector<long> out;
  std::istringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stol(part));
  if (out.empty()) throw CLI::ValidationError("powers", "expected a comma list");
  return out;
}

std::vector<QmCertificate> certificates_from_spec(const GroupPair& pair, const std::string& spec,
                                                  const SclParams& params) {
  if (spec == "auto")
    return auto_certificates(pair, params.cert_base_len, params.cert_schreier_len);
  Json j = read_json_file(spec);
  std::vector<QmCertificate> certs;
  for (const auto& entry : j) {
    std::string kind = entry.at("kind").get<std::string>();
    if (kind == "counting") {
      QmCertificate c =
          make_certificate(CountingQm(pair.alphabet(), parse_word(pair.alphabet(), entry.at("word").get<std::string>())));
      certs.push_back(pair.n_equals_g() ? c : restrict_to_N(pair, c));
    } else if (kind == "counting_on_N") {
      Alphabet sub(pair.schreier_rank());
      QmCertificate c = counting_certificate_on_N(pair, parse_word(sub, entry.at("word").get<std::string>()));
      bool average = entry.value("average", true);
      certs.push_back(average ? invariant_average(pair, c) : c);
    } else {
      throw std::invalid_argument("unknown certificate kind: " + kind);
    }
  }
  return certs;
}

Json bounds_to_json(const Alphabet& alphabet, const Chain1& chain, const SclBounds& b) {
  Json j;
  j["chain"] = chain_to_json(alphabet, chain);
  j["membership"] = b.membership == Membership::Yes      ? "yes"
                    : b.membership == Membership::No     ? "no"
                                                         : "unknown";
  j["membership_detail"] = b.membership_detail;
  j["domain_certified"] = b.domain_certified;
  j["lower"] = {{"value", rational_str(b.lower.value)},
                {"certificate", b.lower.certificate},
                {"certificate_value", rational_str(b.lower.certificate_value)},
                {"certificate_defect", rational_str(b.lower.certificate_defect)}};
  Json upper;
  upper["finite"] = b.upper.finite;
  if (b.upper.finite) upper["value"] = rational_str(b.upper.value);
  Json steps = Json::array();
  for (const UpperStep& s : b.upper.steps) {
    Json step;
    step["n"] = s.n;
    step["kind"] = s.kind;
    step["raw"] = rational_str(s.raw);
    step["bound"] = rational_str(s.bound);
    if (s.kind == "lp") step["radius"] = s.radius;
    steps.push_back(step);
  }
  upper["steps"] = steps;
  j["upper"] = upper;
  if (auto g = b.gap()) j["gap"] = rational_str(*g);
  return j;
}

struct CommonSclOpts {
  std::string pair_path;
  std::string chain_path;
  std::string certs = "auto";
  std::string powers = "1,2,3";
  std::string budget = "2:4:2";
  int radius = 3;
  std::string out;
};

SclParams params_from(const CommonSclOpts& opts) {
  SclParams p;
  p.powers = parse_powers(opts.powers);
  p.radius = opts.radius;
  p.budget = parse_budget(opts.budget);
  return p;
}

int run_sandwich(const CommonSclOpts& opts) {
  GroupPair pair = load_pair(opts.pair_path);
  Chain1 chain = load_chain(opts.chain_path, pair.alphabet());
  SclParams params = params_from(opts);
  std::vector<QmCertificate> certs = certificates_from_spec(pair, opts.certs, params);
  SclBounds b = sandwich(pair, chain, params, certs);
  Json report = bounds_to_json(pair.alphabet(), chain, b);
  emit(report, opts.out);
  note("lower " + rational_str(b.lower.value) + "  upper " +
       (b.upper.finite ? rational_str(b.upper.value) : std::string("unbounded")));
  if (!b.upper.finite) return kInfeasible;
  return kOk;
}

int run_compare(const CommonSclOpts& opts) {
  GroupPair mixed = load_pair(opts.pair_path);
  if (mixed.n_equals_g()) throw std::invalid_argument("compare needs a proper pair (N != G)");
  Chain1 chain = load_chain(opts.chain_path, mixed.alphabet());
  SclParams params = params_from(opts);
  GroupPair plain(mixed.alphabet(), QuotientSpec::trivial());
  SclBounds pb = sandwich(plain, chain, params);
  SclBounds mb = sandwich(mixed, chain, params, certificates_from_spec(mixed, opts.certs, params));
  Json report;
  report["plain"] = bounds_to_json(plain.alphabet(), chain, pb);
  report["mixed"] = bounds_to_json(mixed.alphabet(), chain, mb);
  bool ok1 = !mb.upper.finite || pb.lower.value <= mb.upper.value;
  bool ok2 = !pb.upper.finite || mb.lower.value <= 2 * pb.upper.value;
  report["plain_lower_le_mixed_upper"] = ok1;
  report["mixed_lower_le_twice_plain_upper"] = ok2;
  emit(report, opts.out);
  return (ok1 && ok2) ? kOk : kViolation;
}

int run_harness(const std::string& kind, const CommonSclOpts& opts, const std::string& word,
                const std::string& g1, const std::string& g2, int rank) {
  SclParams params = params_from(opts);
  HarnessReport rep;
  if (kind == "finite-index") {
    if (word.empty()) throw std::invalid_argument("finite-index harness needs --word");
    GroupPair pair = load_pair(opts.pair_path);
    rep = harness_finite_index(pair, parse_word(pair.alphabet(), word), params);
  } else if (kind == "free-product") {
    if (g1.empty() || g2.empty())
      throw std::invalid_argument("free-product harness needs --g1 and --g2");
    Alphabet alphabet(rank);
    rep = harness_free_product(alphabet, parse_word(alphabet, g1), parse_word(alphabet, g2), params);
  } else {
    throw std::invalid_argument("harness kind must be finite-index or free-product");
  }
  Json report;
  report["kind"] = kind;
  report["applicable"] = rep.applicable;
  report["consistent"] = rep.consistent;
  report["detail"] = rep.detail;
  auto side = [](const Interval& i) {
    Json j;
    j["lower"] = rational_str(i.lo);
    if (i.finite_hi) j["upper"] = rational_str(i.hi);
    return j;
  };
  report["left"] = side(rep.left);
  report["right"] = side(rep.right);
  emit(report, opts.out);
  if (!rep.applicable) return kInfeasible;
  return rep.consistent ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified bounds for stable and mixed commutator lengths"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_flag("--quiet", g_quiet, "suppress the human-readable summary on stderr");
  app.add_option("--threads", threads, "cap the worker pool for parallel kernels");

  // pair check
  auto* pair_cmd = app.add_subcommand("pair", "pair utilities");
  pair_cmd->require_subcommand(1);
  std::string pc_path;
  auto* pair_check = pair_cmd->add_subcommand("check", "validate a pair config");
  pair_check->add_option("--pair", pc_path, "pair config (json or toml)")->required();

  // qm
  auto* qm_cmd = app.add_subcommand("qm", "counting quasimorphisms");
  qm_cmd->require_subcommand(1);
  std::string qd_word;
  int qd_rank = 2;
  auto* qm_defect = qm_cmd->add_subcommand("defect", "exact raw defect and certificate bound");
  qm_defect->add_option("--word", qd_word)->required();
  qm_defect->add_option("--rank", qd_rank);
  std::string qe_word, qe_on;
  int qe_rank = 2;
  auto* qm_eval = qm_cmd->add_subcommand("eval", "homogenized evaluation");
  qm_eval->add_option("--word", qe_word)->required();
  qm_eval->add_option("--on", qe_on)->required();
  qm_eval->add_option("--rank", qe_rank);
  std::string qr_lift;
  long qr_n = 1000;
  auto* qm_rot = qm_cmd->add_subcommand("rot", "rotation number of a piecewise-linear lift");
  qm_rot->add_option("--lift", qr_lift)->required();
  qm_rot->add_option("--n", qr_n);

  // lp
  auto* lp_cmd = app.add_subcommand("lp", "exact fills with dual certificates");
  lp_cmd->require_subcommand(1);
  std::string ls_pair, ls_chain, ls_emit;
  int ls_radius = 3;
  auto* lp_solve = lp_cmd->add_subcommand("solve", "minimize the l1 norm of a filling 2-chain");
  lp_solve->add_option("--pair", ls_pair)->required();
  lp_solve->add_option("--chain", ls_chain)->required();
  lp_solve->add_option("--radius", ls_radius);
  lp_solve->add_option("--emit-certs", ls_emit);
  std::string lv_certs;
  auto* lp_verify = lp_cmd->add_subcommand("verify", "replay an emitted certificate");
  lp_verify->add_option("--certs", lv_certs)->required();

  // cl
  auto* cl_cmd = app.add_subcommand("cl", "commutator length search");
  cl_cmd->require_subcommand(1);
  std::string cs_pair, cs_word, cs_budget = "2:4:2";
  auto* cl_search = cl_cmd->add_subcommand("search", "bounded decomposition search");
  cl_search->add_option("--pair", cs_pair)->required();
  cl_search->add_option("--word", cs_word)->required();
  cl_search->add_option("--budget", cs_budget, "k:len[:conj]");

  // surface
  auto* surf_cmd = app.add_subcommand("surface", "labelled simplicial surfaces");
  surf_cmd->require_subcommand(1);
  std::string sv_pair, sv_surface;
  auto* surf_validate = surf_cmd->add_subcommand("validate", "check a surface file");
  surf_validate->add_option("--pair", sv_pair)->required();
  surf_validate->add_option("--surface", sv_surface)->required();
  std::string sb_pair, sb_decomp, sb_out;
  auto* surf_build = surf_cmd->add_subcommand("build", "build from a commutator decomposition");
  surf_build->add_option("--pair", sb_pair)->required();
  surf_build->add_option("--decomp", sb_decomp, "json list of [g, x, conjugator?]")->required();
  surf_build->add_option("--out", sb_out);
  std::string si_pair, si_surface;
  auto* surf_inv = surf_cmd->add_subcommand("invariants", "Euler data and boundary words");
  surf_inv->add_option("--surface", si_surface)->required();
  surf_inv->add_option("--pair", si_pair);

  // scl
  auto* scl_cmd = app.add_subcommand("scl", "two-sided bounds");
  scl_cmd->require_subcommand(1);
  CommonSclOpts sw, cmp, hr;
  auto add_common = [](CLI::App* sub, CommonSclOpts& o, bool need_chain) {
    sub->add_option("--pair", o.pair_path)->required();
    if (need_chain) sub->add_option("--chain", o.chain_path)->required();
    sub->add_option("--radius", o.radius);
    sub->add_option("--powers", o.powers, "comma list of stabilization powers");
    sub->add_option("--certs", o.certs, "auto or a certificate spec file");
    sub->add_option("--budget", o.budget, "k:len[:conj]");
    sub->add_option("--out", o.out, "also write the report here");
  };
  auto* scl_sandwich = scl_cmd->add_subcommand("sandwich", "lower and upper bounds with a gap report");
  add_common(scl_sandwich, sw, true);
  auto* scl_compare = scl_cmd->add_subcommand("compare", "plain versus mixed bounds");
  add_common(scl_compare, cmp, true);
  auto* scl_harness = scl_cmd->add_subcommand("harness", "consistency probes for transfer formulas");
  add_common(scl_harness, hr, false);
  std::string hr_kind, hr_word, hr_g1, hr_g2;
  int hr_rank = 2;
  scl_harness->add_option("--kind", hr_kind, "finite-index | free-product")->required();
  scl_harness->add_option("--word", hr_word);
  scl_harness->add_option("--g1", hr_g1);
  scl_harness->add_option("--g2", hr_g2);
  scl_harness->add_option("--rank", hr_rank);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (*pair_check) {
      GroupPair pair = load_pair(pc_path);
      Json report;
      report["rank"] = pair.alphabet().rank();
      switch (pair.kind()) {
        case QuotientSpec::Kind::Trivial:
          report["quotient"] = "trivial";
          break;
        case QuotientSpec::Kind::FreeAbelian:
          report["quotient"] = "free_abelian";
          report["dimension"] = pair.spec().abelian_images.front().size();
          break;
        case QuotientSpec::Kind::Finite: {
          report["quotient"] = "finite";
          report["order"] = pair.quotient_order();
          report["schreier_rank"] = pair.schreier_rank();
          Json invf = Json::array();
          for (const BigInt& d : pair.mixed_class_invariants()) invf.push_back(d.str());
          report["coinvariant_factors"] = invf;
          Json reps = Json::array();
          for (const Word& r : pair.reps()) reps.push_back(format_word(pair.alphabet(), r));
          report["reps"] = reps;
          break;
        }
      }
      emit(report, "");
      return kOk;
    }
    if (*qm_defect) {
      Alphabet a(qd_rank);
      CountingQm q(a, parse_word(a, qd_word));
      QmCertificate cert = make_certificate(q);
      Json report;
      report["word"] = qd_word;
      report["raw_defect"] = defect_counting_junction(q);
      report["certificate_defect"] = rational_str(cert.defect_upper);
      report["kind"] = cert.defect_kind == DefectKind::Exact ? "exact" : "certified-bound";
      emit(report, "");
      return kOk;
    }
    if (*qm_eval) {
      Alphabet a(qe_rank);
      CountingQm q(a, parse_word(a, qe_word));
      Json report;
      report["word"] = qe_word;
      report["on"] = qe_on;
      report["value"] = rational_str(homogenize_counting(q, parse_word(a, qe_on)));
      emit(report, "");
      return kOk;
    }
    if (*qm_rot) {
      CircleLift h = load_lift(qr_lift);
      RotationNumber rot = translation_number(h, qr_n);
      Json report;
      report["exact"] = rot.exact;
      if (rot.exact) {
        report["value"] = rational_str(rot.value());
      } else {
        report["interval"] = {rational_str(rot.interval.lo), rational_str(rot.interval.hi)};
      }
      emit(report, "");
      return kOk;
    }
    if (*lp_solve) {
      GroupPair pair = load_pair(ls_pair);
      Chain1 target = load_chain(ls_chain, pair.alphabet());
      FillProblem prob(pair, target, build_support(pair, ls_radius));
      LpSolution sol = solve_min_l1(prob);
      Json report = lp_certificate_to_json(pair.alphabet(), prob, sol);
      if (!ls_emit.empty() && sol.status == LpStatus::Optimal) write_json_file(ls_emit, report);
      std::cout << report.dump(2) << "\n";
      if (sol.status != LpStatus::Optimal) {
        note("infeasible at this radius: the truncation is too small");
        return kInfeasible;
      }
      note("value " + rational_str(sol.value));
      return kOk;
    }
    if (*lp_verify) {
      auto [prob, sol] = lp_certificate_from_json(read_json_file(lv_certs));
      bool ok = verify_solution(prob, sol);
      Json report;
      report["valid"] = ok;
      emit(report, "");
      return ok ? kOk : kViolation;
    }
    if (*cl_search) {
      GroupPair pair = load_pair(cs_pair);
      Word y = parse_word(pair.alphabet(), cs_word);
      SearchResult r = cl_upper_search(pair, y, parse_budget(cs_budget));
      Json report;
      report["word"] = cs_word;
      report["outcome"] = r.outcome == SearchOutcome::Found ? "found" : "unknown";
      if (r.outcome == SearchOutcome::Found) {
        report["commutators"] = r.commutator_count;
        Json witness = Json::array();
        for (const CommutatorTerm& t : r.decomposition.commutators)
          witness.push_back({format_word(pair.alphabet(), t.g), format_word(pair.alphabet(), t.x)});
        report["witness"] = witness;
      }
      emit(report, "");
      return r.outcome == SearchOutcome::Found ? kOk : kInfeasible;
    }
    if (*surf_validate) {
      GroupPair pair = load_pair(sv_pair);
      LabelledSurface s = load_surface(sv_surface, pair.alphabet());
      auto diags = validate(s, &pair);
      Json report;
      report["valid"] = diags.empty();
      Json list = Json::array();
      for (const Diagnostic& d : diags) {
        Json item;
        item["message"] = d.message;
        if (d.triangle >= 0) item["triangle"] = d.triangle;
        if (d.edge >= 0) item["edge"] = d.edge;
        if (d.vertex >= 0) item["vertex"] = d.vertex;
        list.push_back(item);
      }
      report["diagnostics"] = list;
      emit(report, "");
      return diags.empty() ? kOk : kViolation;
    }
    if (*surf_build) {
      GroupPair pair = load_pair(sb_pair);
      Json dj = read_json_file(sb_decomp);
      std::vector<CommutatorTerm> dec;
      for (const auto& entry : dj) {
        CommutatorTerm t;
        t.g = parse_word(pair.alphabet(), entry.at(0).get<std::string>());
        t.x = parse_word(pair.alphabet(), entry.at(1).get<std::string>());
        if (entry.size() > 2) t.conjugator = parse_word(pair.alphabet(), entry.at(2).get<std::string>());
        dec.push_back(t);
      }
      LabelledSurface s = build_from_decomposition(pair, dec);
      Json report = surface_to_json(pair.alphabet(), s);
      if (!sb_out.empty()) write_json_file(sb_out, report);
      std::cout << report.dump(2) << "\n";
      return kOk;
    }
    if (*surf_inv) {
      Alphabet a = si_pair.empty() ? Alphabet(2) : load_pair(si_pair).alphabet();
      LabelledSurface s = load_surface(si_surface, a);
      SurfaceInvariants inv = invariants(s);
      Json report;
      report["euler"] = inv.euler;
      report["boundary_count"] = inv.boundary_count;
      report["chi_minus"] = inv.chi_minus;
      Json words = Json::array();
      for (const Word& w : inv.boundary_words) words.push_back(format_word(a, w));
      report["boundary_words"] = words;
      Json comps = Json::array();
      for (const ComponentInvariants& c : inv.components)
        comps.push_back({{"euler", c.euler}, {"boundary_count", c.boundary_count},
                         {"genus", c.genus}, {"sphere", c.is_sphere}});
      report["components"] = comps;
      if (s.degree) report["chi_ratio"] = rational_str(chi_ratio(s));
      emit(report, "");
      return kOk;
    }
    if (*scl_sandwich) return run_sandwich(sw);
    if (*scl_compare) return run_compare(cmp);
    if (*scl_harness) return run_harness(hr_kind, hr, hr_word, hr_g1, hr_g2, hr_rank);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
