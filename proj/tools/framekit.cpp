// framekit: command-line front end for the frame toolkit.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "framekit/commands.hpp"

namespace {

using namespace framekit;
using namespace framekit::cli;

SignPattern parse_signs(const std::string& text) {
  SignPattern out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "1" || item == "+1" || item == "+") {
      out.push_back(1);
    } else if (item == "-1" || item == "-") {
      out.push_back(-1);
    } else {
      throw InvalidParameter("--signs entries must be +1 or -1, got '" + item + "'");
    }
  }
  return out;
}

template <typename T>
std::optional<T> opt_if(const CLI::Option* opt, const T& value) {
  if (opt->count() == 0) return std::nullopt;
  return value;
}

int emit(const Report& r) {
  std::cout << r.dump();
  if (r.error) std::cerr << "framekit: " << r.error->value("message", "error") << "\n";
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framekit: finite frame theory toolkit"};
  app.require_subcommand(1);

  Tolerance tol;
  app.add_option("--rank-rel", tol.rank_rel, "relative rank threshold");
  app.add_option("--eq-abs", tol.eq_abs, "absolute comparison threshold");

  // gen
  GenOptions gen;
  Index gen_blocks = 0, gen_n = 0, gen_dim = 0;
  double gen_eps = 0.0;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a frame (block, perturbed, lemma5, onb)");
  gen_cmd->add_option("kind", gen.kind, "generator")->required();
  auto* gen_blocks_opt = gen_cmd->add_option("--blocks", gen_blocks, "number of blocks N");
  auto* gen_n_opt = gen_cmd->add_option("--n", gen_n, "single-block dimension");
  auto* gen_dim_opt = gen_cmd->add_option("--dim", gen_dim, "dimension of the orthonormal basis");
  auto* gen_eps_opt = gen_cmd->add_option("--eps", gen_eps, "perturbation size in (0, 1)");
  auto* gen_out_opt = gen_cmd->add_option("--out", gen_out, "output file (.json or .csv)");

  // analyze
  std::string analyze_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "bounds, excess and Riesz verdicts of a frame");
  analyze_cmd->add_option("frame", analyze_path, "frame file")->required();

  // transform
  std::string tr_frame, tr_matrix, tr_out;
  auto* tr_cmd = app.add_subcommand("transform", "apply g_i = sum_j u_ij f_j");
  tr_cmd->add_option("frame", tr_frame, "frame file")->required();
  tr_cmd->add_option("matrix", tr_matrix, "matrix file (CSV or JSON)")->required();
  auto* tr_out_opt = tr_cmd->add_option("--out", tr_out, "write the transformed frame here");

  // perturb
  PerturbOptions pert;
  std::uint64_t pert_seed = 0;
  double pert_tail_mu = 0.0;
  auto* pert_cmd = app.add_subcommand("perturb", "check a (lambda, mu) perturbation certificate");
  pert_cmd->add_option("f", pert.f_path, "original frame")->required();
  pert_cmd->add_option("g", pert.g_path, "perturbed frame")->required();
  pert_cmd->add_option("--lambda", pert.lambda, "lambda >= 0")->required();
  pert_cmd->add_option("--mu", pert.mu, "mu >= 0")->required();
  pert_cmd->add_option("--trials", pert.trials, "random violation search trials");
  auto* pert_seed_opt = pert_cmd->add_option("--seed", pert_seed, "random seed");
  auto* pert_tail_opt = pert_cmd->add_option("--tail-mu", pert_tail_mu, "threshold for the tail cut");

  // ubc
  UbcOptions ubc;
  std::string ubc_signs;
  std::uint64_t ubc_seed = 0;
  auto* ubc_cmd = app.add_subcommand("ubc", "unconditional basis constant");
  ubc_cmd->add_option("frame", ubc.path, "frame file")->required();
  auto* ubc_signs_opt = ubc_cmd->add_option("--signs", ubc_signs, "comma separated +1/-1 pattern");
  ubc_cmd->add_flag("--lower-only", ubc.lower_only, "skip exact enumeration");
  ubc_cmd->add_option("--trials", ubc.trials, "random sign patterns for the lower estimate");
  auto* ubc_seed_opt = ubc_cmd->add_option("--seed", ubc_seed, "random seed");
  ubc_cmd->add_option("--max-enum", ubc.max_enum, "largest family enumerated exactly");

  // prune
  std::string prune_path;
  double prune_eps = 0.0;
  auto* prune_cmd = app.add_subcommand("prune", "delete finitely many elements to reach lower bound A - eps");
  prune_cmd->add_option("frame", prune_path, "frame file")->required();
  prune_cmd->add_option("--eps", prune_eps, "eps in (0, A)")->required();

  // repro
  ReproOptions repro;
  std::uint64_t repro_seed = 0;
  auto* repro_cmd = app.add_subcommand("repro", "reproduce a table (lemma6, bounds, counterexample, theorem2)");
  repro_cmd->add_option("experiment", repro.experiment, "experiment name")->required();
  repro_cmd->add_option("--max-n", repro.max_n, "largest block dimension (lemma6)");
  repro_cmd->add_option("--max-enum", repro.max_enum, "largest family enumerated exactly (lemma6)");
  repro_cmd->add_option("--blocks", repro.blocks, "number of blocks");
  repro_cmd->add_option("--eps", repro.eps, "perturbation size");
  repro_cmd->add_option("--trials", repro.trials, "number of random trials");
  auto* repro_seed_opt = repro_cmd->add_option("--seed", repro_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Report failure;
  try {
    tol.validate();
    if (*gen_cmd) {
      gen.blocks = opt_if(gen_blocks_opt, gen_blocks);
      gen.n = opt_if(gen_n_opt, gen_n);
      gen.dim = opt_if(gen_dim_opt, gen_dim);
      gen.eps = opt_if(gen_eps_opt, gen_eps);
      gen.out = opt_if(gen_out_opt, gen_out);
      failure.command = "gen";
      auto out = cmd_gen(gen, tol);
      if (!gen.out) {
        std::cout << frame_to_json_text(out.frame->frame, out.frame->blocks);
        return kExitOk;
      }
      return emit(out.report);
    }
    if (*analyze_cmd) {
      failure.command = "analyze";
      return emit(cmd_analyze(analyze_path, tol));
    }
    if (*tr_cmd) {
      failure.command = "transform";
      return emit(cmd_transform(tr_frame, tr_matrix, opt_if(tr_out_opt, tr_out), tol));
    }
    if (*pert_cmd) {
      failure.command = "perturb";
      pert.seed = opt_if(pert_seed_opt, pert_seed);
      pert.tail_mu = opt_if(pert_tail_opt, pert_tail_mu);
      return emit(cmd_perturb(pert, tol));
    }
    if (*ubc_cmd) {
      failure.command = "ubc";
      if (*ubc_signs_opt) ubc.signs = parse_signs(ubc_signs);
      ubc.seed = opt_if(ubc_seed_opt, ubc_seed);
      return emit(cmd_ubc(ubc, tol));
    }
    if (*prune_cmd) {
      failure.command = "prune";
      return emit(cmd_prune(prune_path, prune_eps, tol));
    }
    if (*repro_cmd) {
      failure.command = "repro";
      repro.seed = opt_if(repro_seed_opt, repro_seed);
      return emit(cmd_repro(repro, tol));
    }
  } catch (const UsageError& e) {
    failure.tol = tol;
    failure.fail("usage", e.what());
    return emit(failure);
  } catch (const std::exception& e) {
    failure.tol = tol;
    failure.fail("numerical", e.what());
    return emit(failure);
  }
  return kExitUsage;
}
