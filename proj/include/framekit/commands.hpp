#pragma once

// Subcommand implementations behind the `framekit` binary. Each command
// returns a JSON report:
//
//   {"command": ..., "inputs": {...}, "results": {...},
//    "tolerances": {"rank_rel": ..., "eq_abs": ...}, "version": ...,
//    "error": {...}   // only on failure
//   }
//
// Exit codes: 0 success, 2 usage error, 3 numerical or contract failure.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "framekit/aldroubi.hpp"
#include "framekit/constructions.hpp"
#include "framekit/io.hpp"
#include "framekit/perturbation.hpp"
#include "framekit/random.hpp"
#include "framekit/riesz.hpp"

#ifndef FRAMEKIT_VERSION
#define FRAMEKIT_VERSION "0.1.0"
#endif

namespace framekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  Tolerance tol;
  std::optional<json> error;

  int exit_code() const {
    if (!error) return kExitOk;
    return error->value("kind", "") == "usage" ? kExitUsage : kExitFailure;
  }

  void fail(const std::string& kind, const std::string& message) {
    error = json{{"kind", kind}, {"message", message}};
  }

  json to_json() const {
    json doc = {{"command", command},
                {"inputs", inputs},
                {"results", results},
                {"tolerances", {{"rank_rel", tol.rank_rel}, {"eq_abs", tol.eq_abs}}},
                {"version", FRAMEKIT_VERSION}};
    if (error) doc["error"] = *error;
    return doc;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

// Seed precedence: explicit flag, then FRAMEKIT_SEED, then 0.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("FRAMEKIT_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw InvalidParameter("FRAMEKIT_SEED must be an unsigned integer");
    return v;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// JSON views of library results
// ---------------------------------------------------------------------------

inline json to_json(const FrameBounds& b) {
  return {{"lower", b.lower}, {"upper", b.upper}, {"rank", b.rank},
          {"spans_whole_space", b.spans_whole_space}};
}

inline json to_json(const RieszVerdict& v) {
  return {{"is_riesz_sequence", v.is_riesz_sequence},
          {"is_riesz_basis_for_space", v.is_riesz_basis_for_space},
          {"lower", v.lower},
          {"upper", v.upper}};
}

inline json to_json(const ExcessReport& e) {
  return {{"excess", e.excess},
          {"kernel_dim", e.kernel_dim},
          {"riesz_subset_indices", e.riesz_subset_indices},
          {"certified_lower", e.certified_lower}};
}

inline json to_json(const UbcValue& u) {
  json out = {{"bounded", u.bounded}, {"maximiser", u.maximiser}};
  out["value"] = u.bounded ? json(u.value) : json(nullptr);
  if (u.kernel_witness) {
    json w = json::array();
    for (Index i = 0; i < u.kernel_witness->size(); ++i) {
      w.push_back(json::array({(*u.kernel_witness)(i).real(), (*u.kernel_witness)(i).imag()}));
    }
    out["kernel_witness"] = std::move(w);
  }
  return out;
}

inline json to_json(const PerturbationCertificate& c) {
  json out = {{"lambda", c.lambda},
              {"mu", c.mu},
              {"admissible", c.admissible},
              {"psd_passed", c.psd_test_passed},
              {"psd_min_eigenvalue", c.psd_min_eigenvalue},
              {"frame_bounds", {c.frame_lower, c.frame_upper}},
              {"measured", {c.measured_lower, c.measured_upper}}};
  if (c.predicted_lower && c.predicted_upper) {
    out["predicted"] = {*c.predicted_lower, *c.predicted_upper};
  } else {
    out["predicted"] = nullptr;
  }
  return out;
}

inline json to_json(const TailProfile& p) {
  return {{"cut_points", p.cut_points}, {"tail_norms", p.tail_norms}};
}

inline json to_json(const PruneResult& p) {
  json out = {{"frame_lower", p.frame_lower},
              {"eps", p.eps},
              {"target_lower", p.frame_lower - p.eps},
              {"proof_cut", p.proof_cut},
              {"proof_deleted", p.proof_deleted},
              {"deleted", p.deleted},
              {"remainder", p.remainder},
              {"certified", p.certified},
              {"achieved_eps", p.achieved_eps}};
  out["remainder_verdict"] = p.remainder_verdict ? to_json(*p.remainder_verdict) : json(nullptr);
  return out;
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
  std::string kind;  // block | perturbed | lemma5 | onb
  std::optional<Index> blocks;
  std::optional<Index> n;
  std::optional<Index> dim;
  std::optional<double> eps;
  std::optional<std::string> out;
};

struct GenOutput {
  Report report;
  std::optional<FrameFile> frame;
};

inline FrameFile generate(const GenOptions& o) {
  auto need = [](const auto& v, const char* flag) {
    if (!v) throw InvalidParameter(std::string("missing required option ") + flag);
    return *v;
  };
  if (o.kind == "block") {
    auto b = block_frame(need(o.blocks, "--blocks"));
    return {b.frame, b.structure.num_blocks()};
  }
  if (o.kind == "perturbed") {
    auto b = perturbed_block_frame(need(o.blocks, "--blocks"), need(o.eps, "--eps"));
    return {b.frame, b.structure.num_blocks()};
  }
  if (o.kind == "lemma5") return {parseval_block(need(o.n, "--n")), std::nullopt};
  if (o.kind == "onb") {
    const Index d = need(o.dim, "--dim");
    if (d < 1) throw InvalidParameter("--dim must be >= 1");
    return {Frame(Matrix::Identity(d, d), FieldKind::real), std::nullopt};
  }
  throw InvalidParameter("unknown generator '" + o.kind + "' (block, perturbed, lemma5, onb)");
}

inline GenOutput cmd_gen(const GenOptions& o, const Tolerance& tol = {}) {
  GenOutput out;
  out.report.command = "gen";
  out.report.tol = tol;
  out.report.inputs["kind"] = o.kind;
  if (o.blocks) out.report.inputs["blocks"] = *o.blocks;
  if (o.n) out.report.inputs["n"] = *o.n;
  if (o.dim) out.report.inputs["dim"] = *o.dim;
  if (o.eps) out.report.inputs["eps"] = *o.eps;
  if (o.out) out.report.inputs["out"] = *o.out;
  auto file = generate(o);
  if (o.out) save_frame(*o.out, file.frame, file.blocks);
  out.report.results = {{"dim", file.frame.dim()}, {"size", file.frame.size()}};
  if (file.blocks) out.report.results["blocks"] = *file.blocks;
  out.frame = std::move(file);
  return out;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

inline json analyze_frame(const Frame& f, const Tolerance& tol) {
  const auto bounds = frame_bounds(f, tol);
  const auto tight = is_tight(f, tol);
  json results = {{"dim", f.dim()},
                  {"size", f.size()},
                  {"field", to_string(f.field())},
                  {"bounds", to_json(bounds)},
                  {"rank", bounds.rank},
                  {"tight", tight.tight},
                  {"excess", to_json(excess(f, tol))},
                  {"riesz", to_json(riesz_verdict(f, tol))}};
  results["tight_constant"] = tight.constant ? json(*tight.constant) : json(nullptr);
  return results;
}

inline Report cmd_analyze(const std::string& path, const Tolerance& tol = {}) {
  Report r;
  r.command = "analyze";
  r.tol = tol;
  r.inputs["frame"] = path;
  const auto file = load_frame(path);
  r.results = analyze_frame(file.frame, tol);
  if (file.blocks) r.results["blocks"] = *file.blocks;
  return r;
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

inline Report cmd_transform(const std::string& frame_path, const std::string& matrix_path,
                            const std::optional<std::string>& out_path, const Tolerance& tol = {}) {
  Report r;
  r.command = "transform";
  r.tol = tol;
  r.inputs = {{"frame", frame_path}, {"matrix", matrix_path}};
  if (out_path) r.inputs["out"] = *out_path;
  const auto file = load_frame(frame_path);
  const TransformMatrix u(load_matrix(matrix_path));
  const Frame g = transform(file.frame, u);

  const double gamma = frame_criterion_gamma(file.frame, u, tol);
  const auto split = kernel_dimension_split(file.frame, u, tol);
  const auto criterion = riesz_basis_criterion(file.frame, u, tol);
  const auto gb = frame_bounds(g, tol);
  r.results = {{"gamma", gamma},
               {"is_frame_for_span_of_source", criterion.transformed_is_frame},
               {"transformed_bounds", to_json(gb)},
               {"source_bounds", to_json(frame_bounds(file.frame, tol))},
               {"kernel_split",
                {{"lhs", split.lhs},
                 {"rhs_intersection", split.rhs_intersection},
                 {"rhs_corange", split.rhs_corange},
                 {"agree", split.agree}}},
               {"riesz_basis_criterion",
                {{"surjective", criterion.surjective},
                 {"transformed_is_frame", criterion.transformed_is_frame},
                 {"riesz_basis", criterion.riesz_basis}}},
               {"transformed_riesz", to_json(riesz_verdict(g, tol))}};
  // The identity preserves any block structure the source carried.
  const bool identity = u.rows() == u.cols() &&
                        u.matrix() == Matrix::Identity(u.rows(), u.cols());
  if (out_path) save_frame(*out_path, g, identity ? file.blocks : std::nullopt);
  if (!split.agree) r.fail("numerical", "dimension identity for the transformed kernel did not hold");
  return r;
}

// ---------------------------------------------------------------------------
// perturb
// ---------------------------------------------------------------------------

struct PerturbOptions {
  std::string f_path;
  std::string g_path;
  double lambda = 0.0;
  double mu = 0.0;
  Index trials = 1000;
  std::optional<std::uint64_t> seed;
  std::optional<double> tail_mu;
};

inline Report cmd_perturb(const PerturbOptions& o, const Tolerance& tol = {}) {
  Report r;
  r.command = "perturb";
  r.tol = tol;
  const std::uint64_t seed = resolve_seed(o.seed);
  r.inputs = {{"f", o.f_path}, {"g", o.g_path}, {"lambda", o.lambda},
              {"mu", o.mu},    {"trials", o.trials}, {"seed", seed}};
  const auto f = load_frame(o.f_path);
  const auto g = load_frame(o.g_path);
  const PerturbationPair pair(f.frame, g.frame);
  const auto cert = check_certificate(pair, o.lambda, o.mu, tol);
  const auto witness = violation_search(pair, o.lambda, o.mu, o.trials, seed, tol);
  const auto ex = excess_compare(f.frame, g.frame, tol);

  r.results = {{"k_norm", pair.k_norm()},
               {"certificate", to_json(cert)},
               {"violation_witness", witness ? vector_to_json(*witness) : json(nullptr)},
               {"excess", {{"excess_f", ex.excess_f}, {"excess_g", ex.excess_g}, {"equal", ex.equal}}}};
  if (cert.predicted_lower) {
    r.results["measured_inside_predicted"] =
        cert.measured_lower >= *cert.predicted_lower - tol.eq_abs &&
        cert.measured_upper <= *cert.predicted_upper + tol.eq_abs;
  }
  if (f.blocks && g.blocks) {
    if (*f.blocks != *g.blocks) throw DimensionMismatch("frames carry different block structures");
    const BlockStructure s(*f.blocks);
    r.results["tail_profile"] = to_json(tail_profile(pair, s));
    const double mu_cut = o.tail_mu.value_or(o.mu > 0.0 ? o.mu : 0.5);
    const auto cut = find_tail_cut(pair, s, mu_cut);
    r.results["tail_cut"] = {{"mu", mu_cut},
                             {"cut", cut.cut},
                             {"blocks_before", cut.blocks_before},
                             {"interior", cut.interior},
                             {"tail_norm", cut.tail_norm}};
  }
  if (cert.psd_test_passed && witness) {
    r.fail("numerical", "violation witness found although the PSD certificate passed");
  }
  return r;
}

// ---------------------------------------------------------------------------
// ubc
// ---------------------------------------------------------------------------

struct UbcOptions {
  std::string path;
  std::optional<SignPattern> signs;
  bool lower_only = false;
  Index trials = 1000;
  std::optional<std::uint64_t> seed;
  Index max_enum = kDefaultMaxEnum;
};

inline Report cmd_ubc(const UbcOptions& o, const Tolerance& tol = {}) {
  Report r;
  r.command = "ubc";
  r.tol = tol;
  const std::uint64_t seed = resolve_seed(o.seed);
  r.inputs = {{"frame", o.path}, {"max_enum", o.max_enum}, {"trials", o.trials}, {"seed", seed},
              {"lower_only", o.lower_only}};
  const auto file = load_frame(o.path);
  const Frame& f = file.frame;
  if (o.signs) {
    r.inputs["signs"] = *o.signs;
    r.results["mode"] = "signs";
    r.results["ubc"] = to_json(ubc_for_signs(f, *o.signs, tol));
  } else if (!o.lower_only && f.size() <= o.max_enum) {
    r.results["mode"] = "exact";
    r.results["ubc"] = to_json(ubc_exact(f, tol, o.max_enum));
  } else {
    r.results["mode"] = "lower_estimate";
    r.results["ubc"] = to_json(ubc_lower_estimate(f, o.trials, seed, tol));
  }
  return r;
}

// ---------------------------------------------------------------------------
// prune
// ---------------------------------------------------------------------------

inline Report cmd_prune(const std::string& path, double eps, const Tolerance& tol = {}) {
  Report r;
  r.command = "prune";
  r.tol = tol;
  r.inputs = {{"frame", path}, {"eps", eps}};
  const auto file = load_frame(path);
  const auto result = prune_to_lower_bound(file.frame, eps, tol);
  r.results = to_json(result);
  if (!result.certified) {
    r.fail("numerical", "remainder lower bound below A - eps; best achievable eps is " +
                            std::to_string(result.achieved_eps));
  }
  return r;
}

// ---------------------------------------------------------------------------
// repro
// ---------------------------------------------------------------------------

struct ReproOptions {
  std::string experiment;  // lemma6 | bounds | counterexample | theorem2
  Index max_n = 14;
  Index max_enum = 16;
  Index blocks = 8;
  double eps = 0.3;
  Index trials = 200;
  std::optional<std::uint64_t> seed;
};

// The spanning subset {f_1, ..., f_{n-1}, f_{n+1}} of the n-dimensional block.
inline Frame spanning_subset_without_last(Index n) {
  std::vector<Index> idx;
  for (Index i = 0; i < n - 1; ++i) idx.push_back(i);
  idx.push_back(n);
  return parseval_block(n).subfamily(idx);
}

inline json repro_ubc_growth(const ReproOptions& o, const Tolerance& tol, bool& ok) {
  json rows = json::array();
  for (Index n = 2; n <= o.max_n; ++n) {
    const Frame block = parseval_block(n);
    const Frame subset = spanning_subset_without_last(n);
    const bool exact = subset.size() <= o.max_enum;
    const auto ubc = exact ? ubc_exact(subset, tol, o.max_enum) : ubc_lower_estimate(subset, 0, 0, tol);
    const double bound = std::sqrt(static_cast<double>(n - 1)) - 1.0;

    Vector plain = Vector::Zero(n);
    Vector alternating = Vector::Zero(n);
    for (Index i = 0; i < n - 1; ++i) {
      plain += block.vector(i);
      alternating += ((i + 1) % 2 == 0 ? 1.0 : -1.0) * block.vector(i);
    }
    const double plain_expected = std::sqrt(static_cast<double>(n * (n - 1))) / static_cast<double>(n);
    const bool row_ok = ubc.value >= bound && std::abs(plain.norm() - plain_expected) <= 1e-12 &&
                        alternating.norm() >= bound;
    ok = ok && row_ok;
    rows.push_back({{"n", n},
                    {"ubc", ubc.value},
                    {"method", exact ? "exact" : "lower_estimate"},
                    {"bound", bound},
                    {"sum_norm", plain.norm()},
                    {"sum_norm_expected", plain_expected},
                    {"alternating_norm", alternating.norm()},
                    {"ok", row_ok}});
  }
  return rows;
}

inline json repro_bounds(const ReproOptions& o, const Tolerance& tol, bool& ok) {
  json rows = json::array();
  const double lo = (1.0 - o.eps) * (1.0 - o.eps);
  const double hi = (1.0 + o.eps) * (1.0 + o.eps);
  for (Index n = 1; n <= o.blocks; ++n) {
    const auto fb = frame_bounds(block_frame(n).frame, tol);
    const auto gb = frame_bounds(perturbed_block_frame(n, o.eps).frame, tol);
    const bool row_ok = std::abs(fb.lower - 1.0) <= 1e-10 && std::abs(fb.upper - 1.0) <= 1e-10 &&
                        gb.lower >= lo - tol.eq_abs && gb.upper <= hi + tol.eq_abs &&
                        gb.spans_whole_space;
    ok = ok && row_ok;
    rows.push_back({{"blocks", n},
                    {"block_bounds", {fb.lower, fb.upper}},
                    {"perturbed_bounds", {gb.lower, gb.upper}},
                    {"predicted", {lo, hi}},
                    {"ok", row_ok}});
  }
  return rows;
}

inline json repro_counterexample(const ReproOptions& o, const Tolerance& tol, bool& ok) {
  const auto rep = block_counterexample(o.blocks, o.eps, tol);
  ok = rep.all_pass();
  json trend = json::array();
  for (const auto& row : rep.trend) {
    trend.push_back({{"n", row.n},
                     {"best_spanning_lower", row.best_spanning_lower},
                     {"spanning_subsets", row.spanning_subsets},
                     {"ubc_bound", row.ubc_bound},
                     {"ubc_estimate", row.ubc_estimate}});
  }
  return {{"forward_certificate", to_json(rep.forward)},
          {"backward_certificate", to_json(rep.backward)},
          {"certificates_pass", rep.certificates_pass},
          {"g_leading", to_json(rep.g_leading)},
          {"g_leading_lower_target", o.eps * o.eps},
          {"g_leading_riesz", rep.g_leading_riesz},
          {"trend", std::move(trend)},
          {"trend_strictly_decreasing", rep.trend_strictly_decreasing}};
}

struct TransformInstance {
  Frame frame;
  TransformMatrix u;
};

// Random (F, U) with planted ranks; part of R_{U^T} is drawn from N_T so the
// intersection term is exercised.
inline TransformInstance random_transform_instance(InstanceGenerator& gen, bool complex,
                                                 Index max_dim = 8) {
  const Index d = gen.uniform_int(1, max_dim);
  const Index m = gen.uniform_int(1, max_dim);
  const Index m_out = gen.uniform_int(1, max_dim);
  const Index rank_t = gen.uniform_int(0, std::min(d, m));
  Matrix t = gen.with_rank(d, m, rank_t, complex);
  const Index rank_u = gen.uniform_int(0, std::min(m, m_out));
  Matrix left = gen.gaussian(m, rank_u, complex);
  const auto kernel = null_space_basis(t);
  const Index planted = std::min<Index>(kernel.dim(), gen.uniform_int(0, rank_u));
  for (Index j = 0; j < planted; ++j) {
    left.col(j) = kernel.vectors() * gen.gaussian_vector(kernel.dim(), complex);
  }
  const Matrix ut = rank_u == 0 ? Matrix(Matrix::Zero(m, m_out))
                                : Matrix(left * gen.gaussian(rank_u, m_out, complex));
  return {Frame(std::move(t)), TransformMatrix(Matrix(ut.transpose()))};
}

inline json repro_kernel_split(const ReproOptions& o, std::uint64_t seed, const Tolerance& tol,
                           bool& ok) {
  InstanceGenerator gen(seed);
  json rows = json::array();
  Index agree = 0;
  for (Index trial = 0; trial < o.trials; ++trial) {
    const bool complex = (trial % 2) == 1;
    const auto inst = random_transform_instance(gen, complex);
    const auto split = kernel_dimension_split(inst.frame, inst.u, tol);
    if (split.agree) ++agree;
    rows.push_back({{"trial", trial},
                    {"complex", complex},
                    {"dim", inst.frame.dim()},
                    {"m", inst.frame.size()},
                    {"m_out", inst.u.rows()},
                    {"lhs", split.lhs},
                    {"rhs_intersection", split.rhs_intersection},
                    {"rhs_corange", split.rhs_corange},
                    {"agree", split.agree}});
  }
  ok = agree == o.trials;
  return {{"rows", std::move(rows)}, {"agree", agree}, {"trials", o.trials}};
}

inline Report cmd_repro(const ReproOptions& o, const Tolerance& tol = {}) {
  Report r;
  r.command = "repro";
  r.tol = tol;
  const std::uint64_t seed = resolve_seed(o.seed);
  r.inputs = {{"experiment", o.experiment}};
  bool ok = true;
  if (o.experiment == "lemma6") {
    r.inputs["max_n"] = o.max_n;
    r.inputs["max_enum"] = o.max_enum;
    if (o.max_n < 2) throw InvalidParameter("--max-n must be >= 2");
    r.results["rows"] = repro_ubc_growth(o, tol, ok);
  } else if (o.experiment == "bounds") {
    r.inputs["blocks"] = o.blocks;
    r.inputs["eps"] = o.eps;
    r.results["rows"] = repro_bounds(o, tol, ok);
  } else if (o.experiment == "counterexample") {
    r.inputs["blocks"] = o.blocks;
    r.inputs["eps"] = o.eps;
    r.results = repro_counterexample(o, tol, ok);
  } else if (o.experiment == "theorem2") {
    r.inputs["trials"] = o.trials;
    r.inputs["seed"] = seed;
    r.results = repro_kernel_split(o, seed, tol, ok);
  } else {
    throw InvalidParameter("unknown experiment '" + o.experiment +
                           "' (lemma6, bounds, counterexample, theorem2)");
  }
  r.results["all_ok"] = ok;
  if (!ok) r.fail("contract", "one or more rows failed their check");
  return r;
}

}  // namespace framekit::cli
