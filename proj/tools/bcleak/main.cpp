#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>

#include <bcleak/ineq.hpp>
#include <bcleak/io.hpp>

#include "commands.hpp"

using namespace bcleak::cli;

int main(int argc, char** argv) {
  CLI::App app{"Rate regions of broadcast channels with leakage constraints"};
  app.require_subcommand(1);

  RunContext ctx;
  ctx.invocation = "bcleak";
  for (int i = 1; i < argc; ++i) ctx.invocation += std::string(" ") + argv[i];

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", ctx.seed, "Seed for every random draw")->capture_default_str();
    sub->add_option("--out", ctx.out_dir, "Output directory")->capture_default_str();
    sub->add_flag("--svg", ctx.svg, "Also write SVG polylines of the frontiers");
  };

  RegionArgs ra;
  auto* region = app.add_subcommand("region", "Frontier of a named region as a union over distributions");
  region->add_option("--channel", ra.channel, "Channel JSON file or 'blackwell'")->capture_default_str();
  region->add_option("--id", ra.id, "Region id")->required();
  region->add_option("--l1", ra.l1, "Leakage budget L1 in bits or 'inf'")->capture_default_str();
  region->add_option("--l2", ra.l2, "Leakage budget L2 in bits or 'inf'")->capture_default_str();
  region->add_option("--grid", ra.grid, "Simplex grid steps")->capture_default_str();
  region->add_option("--samples", ra.samples, "Random distributions after the grid")->capture_default_str();
  region->add_option("--refine", ra.refine, "Refinement iterations per frontier point")->capture_default_str();
  region->add_option("--aux-size", ra.aux_size, "Alphabet size of each auxiliary")->capture_default_str();
  region->add_option("--workers", ra.workers, "Worker threads")->capture_default_str();
  common(region);

  BlackwellArgs ba;
  auto* bw = app.add_subcommand("blackwell", "Blackwell channel study: frontiers, sum rate, shapes, thresholds");
  bw->add_option("--resolution", ba.resolution, "Input grid resolution for the frontiers")->capture_default_str();
  bw->add_option("--threshold-resolution", ba.threshold_resolution, "Grid resolution for thresholds and sum rate")
      ->capture_default_str();
  bw->add_option("--alpha", ba.alpha, "P(X=0) for the shape plot")->capture_default_str();
  bw->add_option("--beta", ba.beta, "P(X=1) for the shape plot")->capture_default_str();
  bw->add_option("--workers", ba.workers, "Worker threads")->capture_default_str();
  common(bw);

  FmeArgs fa;
  std::string fme_out;
  auto* fme = app.add_subcommand("fme", "Fourier-Motzkin elimination of an inequality system");
  auto* in_opt = fme->add_option("--input", fa.input, "System file in the inequality grammar");
  fme->add_option("--builtin", fa.builtin, "Built-in system: achievability")->excludes(in_opt);
  fme->add_option("--eliminate", fa.eliminate, "Variables to eliminate, in order")->delimiter(',');
  fme->add_option("--reference", fa.reference, "System to compare against (exit 1 on mismatch)");
  fme->add_flag("!--no-prune-steps", fa.prune_steps, "Only prune after the last elimination");
  fme->add_option("--seed", ctx.seed, "Recorded in the output header")->capture_default_str();
  fme->add_option("--out", fme_out, "Write fme_derived.txt here instead of stdout");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Reduction, lift and projection suites");
  verify->add_option("--channel", va.channel, "Channel JSON file or 'blackwell'")->capture_default_str();
  verify->add_option("--trials", va.trials, "Trials per check")->capture_default_str()->check(CLI::PositiveNumber);
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (region->parsed()) return cmd_region(ctx, ra);
    if (bw->parsed()) return cmd_blackwell(ctx, ba);
    if (fme->parsed()) {
      if (!fme_out.empty()) {
        ctx.out_dir = fme_out;
        fa.to_stdout = false;
      }
      return cmd_fme(ctx, fa);
    }
    if (verify->parsed()) return cmd_verify(ctx, va);
  } catch (const bcleak::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const bcleak::ParseError& e) {
    std::cerr << "error: " << e.line() << ":" << e.column() << ": " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailedVerdict;
  }
  return kExitBadInput;
}
