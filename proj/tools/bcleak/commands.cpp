#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <bcleak/blackwell.hpp>
#include <bcleak/equivalence.hpp>
#include <bcleak/fme.hpp>
#include <bcleak/io.hpp>
#include <bcleak/search.hpp>

#include "svg.hpp"

namespace bcleak::cli {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> header(const RunContext& ctx) {
  return {"invocation: " + ctx.invocation, "seed: " + std::to_string(ctx.seed)};
}

nlohmann::json config(const RunContext& ctx) { return {{"invocation", ctx.invocation}, {"seed", ctx.seed}}; }

fs::path out_path(const RunContext& ctx, const std::string& name) {
  fs::create_directories(ctx.out_dir);
  return fs::path(ctx.out_dir) / name;
}

void write_json(const fs::path& p, const nlohmann::json& j) {
  std::ofstream os(p);
  os << j.dump(2) << '\n';
}

Dmbc resolve_channel(const std::string& spec) { return spec == "blackwell" ? blackwell() : load_channel(spec); }

void write_frontier(const RunContext& ctx, const std::string& stem, const FrontierCurve& f,
                    const std::vector<std::string>& extra = {}) {
  auto h = header(ctx);
  h.insert(h.end(), extra.begin(), extra.end());
  std::ofstream os(out_path(ctx, stem + ".csv"));
  write_frontier_csv(os, f, h);
  if (ctx.svg) write_svg(out_path(ctx, stem + ".svg").string(), {f});
}

IneqSystem load_system(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_system(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
}

// 0.0500000000 -> 0.05, 0.0000000000 -> 0
std::string label_of(double l) {
  std::string s = format_bits(l);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

int cmd_region(const RunContext& ctx, const RegionArgs& a) {
  const Dmbc c = resolve_channel(a.channel);
  const RegionId id = parse_region_id(a.id);
  const LeakagePair leak{parse_bits(a.l1), parse_bits(a.l2)};
  SearchBudget budget{a.grid, a.samples, a.refine, ctx.seed};
  const FrontierCurve f = union_frontier(id, c, leak, budget, {a.aux_size, a.workers});

  const std::string stem(to_string(id));
  write_frontier(ctx, stem + "_frontier", f, {"region: " + stem, "l1: " + a.l1, "l2: " + a.l2});
  {
    // Time-shared (convexified) version of the same union, labeled separately.
    std::ofstream os(out_path(ctx, stem + "_envelope.csv"));
    for (const auto& h : header(ctx)) os << "# " << h << '\n';
    os << "# region: " << stem << " (upper concave envelope)\n# l1: " << a.l1 << "\n# l2: " << a.l2 << '\n';
    os << "r1_bits,r2_bits\n";
    for (const auto& q : upper_concave_envelope(f)) os << format_bits(q[0]) << ',' << format_bits(q[1]) << '\n';
  }

  nlohmann::json polys = nlohmann::json::array();
  for (std::size_t i = 0; i < f.sources.size(); ++i) {
    nlohmann::json p = polytope_to_json(named_region_polytope(id, f.sources[i], c, leak));
    p["provenance_id"] = i;
    polys.push_back(std::move(p));
  }
  write_json(out_path(ctx, stem + "_polytopes.json"), {{"config", config(ctx)}, {"polytopes", polys}});
  nlohmann::json prov = provenance_json(f);
  prov["config"] = config(ctx);
  write_json(out_path(ctx, stem + "_provenance.json"), prov);
  std::cout << f.points.size() << " frontier points, " << f.sources.size() << " source distributions\n";
  return kExitOk;
}

int cmd_blackwell(const RunContext& ctx, const BlackwellArgs& a) {
  const std::vector<double> levels = {0.0, 0.05, 0.1, 0.4};
  const struct {
    const char* stem;
    bool finite1, finite2;
  } panels[] = {{"fig3a", true, false}, {"fig3b", false, true}, {"fig3c", true, true}};
  for (const auto& panel : panels)
    for (double l : levels) {
      const LeakagePair leak{panel.finite1 ? l : kInfinity, panel.finite2 ? l : kInfinity};
      const FrontierCurve f = bwc_frontier(leak, a.resolution, 8, a.workers);
      write_frontier(ctx, std::string(panel.stem) + "_L" + label_of(l), f,
                     {"l1: " + format_bits(leak.l1), "l2: " + format_bits(leak.l2)});
    }
  write_frontier(ctx, "fig3_Linf", bwc_frontier(LeakagePair::infinite(), a.resolution, 8, a.workers),
                 {"l1: inf", "l2: inf"});

  std::vector<double> grid;
  for (int k = 0; k <= 120; ++k) grid.push_back(0.0025 * k);
  const SumRateCurve s = bwc_sumrate_curve(grid, a.threshold_resolution);
  {
    std::ofstream os(out_path(ctx, "fig4.csv"));
    for (const auto& h : header(ctx)) os << "# " << h << '\n';
    os << "# breakpoint_bits: " << format_bits(s.breakpoint) << '\n';
    os << "# decoupled_breakpoint_bits: " << format_bits(s.decoupled_breakpoint) << '\n';
    os << "# plateau_bits: " << format_bits(s.plateau) << '\n';
    os << "L_bits,sum_rate_bits\n";
    for (std::size_t i = 0; i < s.leak.size(); ++i) os << format_bits(s.leak[i]) << ',' << format_bits(s.sum_rate[i]) << '\n';
  }

  const BwcShapes shapes = bwc_shapes({a.alpha, a.beta});
  write_json(out_path(ctx, "fig6.json"), {{"config", config(ctx)},
                                          {"alpha", a.alpha},
                                          {"beta", a.beta},
                                          {"no_secrecy", polytope_to_json(shapes.no_secrecy)},
                                          {"m1_secret", polytope_to_json(shapes.m1_secret)},
                                          {"m2_secret", polytope_to_json(shapes.m2_secret)},
                                          {"both_secret", polytope_to_json(shapes.both_secret)}});

  std::ofstream os(out_path(ctx, "thresholds.csv"));
  for (const auto& h : header(ctx)) os << "# " << h << '\n';
  os << "L_bits,lstar_bits,alpha,beta\n";
  for (double l : levels) {
    const ThresholdResult t = bwc_saturation_threshold(l, a.threshold_resolution);
    os << format_bits(l) << ',' << format_bits(t.lstar) << ',' << format_bits(t.argmax.alpha) << ','
       << format_bits(t.argmax.beta) << '\n';
    std::cout << "L = " << format_bits(l) << "  L* = " << format_bits(t.lstar) << '\n';
  }
  return kExitOk;
}

int cmd_fme(const RunContext& ctx, const FmeArgs& a) {
  IneqSystem sys;
  std::vector<std::string> order = a.eliminate;
  IneqSystem reference;
  bool have_reference = false;
  if (!a.builtin.empty()) {
    if (a.builtin != "achievability") throw InputError("unknown builtin system '" + a.builtin + "'");
    sys = achievability_system();
    if (order.empty()) order = achievability_elimination_order();
    if (a.reference.empty()) {
      reference = inner_bound_reference_system();
      have_reference = true;
    }
  } else {
    if (a.input.empty()) throw InputError("fme: give --input or --builtin");
    sys = load_system(a.input);
  }
  if (!a.reference.empty()) {
    reference = load_system(a.reference);
    have_reference = true;
  }
  for (const auto& v : order)
    if (!sys.has_variable(v)) throw InputError("fme: '" + v + "' is not a variable of the system");

  const IneqSystem derived = eliminate_all(sys, order, a.prune_steps);
  std::ostringstream text;
  for (const auto& h : header(ctx)) text << "# " << h << '\n';
  text << render_system(derived);
  if (a.to_stdout) {
    std::cout << text.str();
  } else {
    std::ofstream(out_path(ctx, "fme_derived.txt")) << text.str();
  }
  if (!have_reference) return kExitOk;
  const bool eq = canonical_equal(derived, reference);
  std::cerr << "canonical_equal: " << (eq ? "true" : "false") << '\n';
  return eq ? kExitOk : kExitFailedVerdict;
}

int cmd_verify(const RunContext& ctx, const VerifyArgs& a) {
  SuiteOptions opts;
  opts.trials = a.trials;
  opts.seed = ctx.seed;
  opts.channel = resolve_channel(a.channel);
  const SuiteReport rep = verify_all(opts);
  nlohmann::json j = rep.to_json();
  j["config"] = config(ctx);
  write_json(out_path(ctx, "verify_report.json"), j);
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  trials=" << c.trials
              << "  max_deviation=" << format_bits(c.max_deviation) << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
  if (rep.all_pass()) return kExitOk;
  for (const auto& name : rep.failed()) std::cerr << "failed check: " << name << '\n';
  return kExitFailedVerdict;
}

}  // namespace bcleak::cli
