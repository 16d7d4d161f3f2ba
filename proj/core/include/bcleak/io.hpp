#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bcleak/channel.hpp"
#include "bcleak/frontier.hpp"
#include "bcleak/polytope.hpp"

namespace bcleak {

// Bad or unreadable input file; the message names the file and the offending field or line.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);

// {"x_size", "y1_size", "y2_size", "kernel": flat [x][y1][y2]}
Dmbc parse_channel(std::string_view text, const std::string& source = "<channel>");
Dmbc load_channel(const std::string& path);
nlohmann::json channel_to_json(const Dmbc& c);

// {"axes": [{"name", "size"}...], "tensor": flat row-major}
JointPmf parse_distribution(std::string_view text, const std::string& source = "<distribution>");
JointPmf load_distribution(const std::string& path);
nlohmann::json distribution_to_json(const JointPmf& p);

nlohmann::json polytope_to_json(const RatePolytope& p);

// CSV `r1_bits,r2_bits,provenance_id` preceded by `# ` comment lines.
void write_frontier_csv(std::ostream& os, const FrontierCurve& f, const std::vector<std::string>& header = {});
// Provenance table: id, fingerprint, axes and tensor of each source distribution.
nlohmann::json provenance_json(const FrontierCurve& f);

// Parses a rate or leakage value; "inf" (any case) is +infinity.
double parse_bits(std::string_view s);
std::string format_bits(double v);

}  // namespace bcleak
