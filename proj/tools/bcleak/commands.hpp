#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bcleak::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedVerdict = 1;
inline constexpr int kExitBadInput = 2;

struct RunContext {
  std::string invocation;  // argv joined with single spaces
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool svg = false;
};

struct RegionArgs {
  std::string channel = "blackwell";
  std::string id;
  std::string l1 = "0";
  std::string l2 = "0";
  std::size_t grid = 4;
  std::size_t samples = 64;
  std::size_t refine = 8;
  std::size_t aux_size = 2;
  std::size_t workers = 1;
};

struct BlackwellArgs {
  double resolution = 1e-2;
  double threshold_resolution = 1e-3;
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  std::size_t workers = 1;
};

struct FmeArgs {
  std::string input;
  std::string builtin;
  std::vector<std::string> eliminate;
  std::string reference;
  bool prune_steps = true;
  bool to_stdout = true;
};

struct VerifyArgs {
  std::string channel = "blackwell";
  std::size_t trials = 100;
};

int cmd_region(const RunContext& ctx, const RegionArgs& a);
int cmd_blackwell(const RunContext& ctx, const BlackwellArgs& a);
int cmd_fme(const RunContext& ctx, const FmeArgs& a);
int cmd_verify(const RunContext& ctx, const VerifyArgs& a);

}  // namespace bcleak::cli
