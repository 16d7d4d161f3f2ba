#include "bcleak/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace bcleak {
namespace {

nlohmann::json parse_json(std::string_view text, const std::string& source) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Report a line number instead of a byte offset.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

const nlohmann::json& field(const nlohmann::json& j, const char* name, const std::string& source) {
  if (!j.is_object() || !j.contains(name)) throw InputError(source + ": missing field '" + name + "'");
  return j.at(name);
}

std::size_t size_field(const nlohmann::json& j, const char* name, const std::string& source) {
  const auto& v = field(j, name, source);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw InputError(source + ": field '" + name + "' must be a positive integer");
  return v.get<std::size_t>();
}

std::vector<double> number_array(const nlohmann::json& j, const char* name, const std::string& source) {
  const auto& v = field(j, name, source);
  if (!v.is_array()) throw InputError(source + ": field '" + name + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw InputError(source + ": " + name + "[" + std::to_string(i) + "] is not a number");
    out.push_back(v[i].get<double>());
    if (!std::isfinite(out.back()) || out.back() < 0)
      throw InputError(source + ": " + name + "[" + std::to_string(i) + "] is not a probability");
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dmbc parse_channel(std::string_view text, const std::string& source) {
  const nlohmann::json j = parse_json(text, source);
  Dmbc c;
  c.x_size = size_field(j, "x_size", source);
  c.y1_size = size_field(j, "y1_size", source);
  c.y2_size = size_field(j, "y2_size", source);
  c.kernel = number_array(j, "kernel", source);
  if (c.kernel.size() != c.x_size * c.y1_size * c.y2_size)
    throw InputError(source + ": kernel has " + std::to_string(c.kernel.size()) + " entries, expected " +
                     std::to_string(c.x_size * c.y1_size * c.y2_size));
  try {
    validate_channel(c);
  } catch (const ChannelError& e) {
    throw InputError(source + ": " + e.what());
  }
  return c;
}

Dmbc load_channel(const std::string& path) { return parse_channel(read_text_file(path), path); }

nlohmann::json channel_to_json(const Dmbc& c) {
  return {{"x_size", c.x_size}, {"y1_size", c.y1_size}, {"y2_size", c.y2_size}, {"kernel", c.kernel}};
}

JointPmf parse_distribution(std::string_view text, const std::string& source) {
  const nlohmann::json j = parse_json(text, source);
  const auto& axes_j = field(j, "axes", source);
  if (!axes_j.is_array()) throw InputError(source + ": field 'axes' must be an array");
  std::vector<Axis> axes;
  for (std::size_t i = 0; i < axes_j.size(); ++i) {
    const std::string where = source + ": axes[" + std::to_string(i) + "]";
    const auto& name = field(axes_j[i], "name", where);
    if (!name.is_string()) throw InputError(where + ": 'name' must be a string");
    axes.push_back({name.get<std::string>(), size_field(axes_j[i], "size", where)});
  }
  std::vector<double> tensor = number_array(j, "tensor", source);
  try {
    return JointPmf(std::move(axes), std::move(tensor));
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  }
}

JointPmf load_distribution(const std::string& path) { return parse_distribution(read_text_file(path), path); }

nlohmann::json distribution_to_json(const JointPmf& p) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& a : p.axes()) axes.push_back({{"name", a.name}, {"size", a.size}});
  return {{"axes", axes}, {"tensor", std::vector<double>(p.tensor().begin(), p.tensor().end())}};
}

nlohmann::json polytope_to_json(const RatePolytope& p) {
  nlohmann::json hs = nlohmann::json::array();
  for (const auto& h : p.halfspaces) hs.push_back({{"label", h.label}, {"coeffs", h.coeffs}, {"rhs", h.rhs}});
  nlohmann::json vs = nlohmann::json::array();
  if (p.dim() <= 3)
    for (const auto& v : vertices(p)) vs.push_back(v);
  return {{"label", p.label}, {"axes", p.axes}, {"halfspaces", hs}, {"vertices", vs}};
}

void write_frontier_csv(std::ostream& os, const FrontierCurve& f, const std::vector<std::string>& header) {
  for (const auto& h : header) os << "# " << h << '\n';
  os << "r1_bits,r2_bits,provenance_id\n";
  for (const auto& p : f.points) os << format_bits(p.r1) << ',' << format_bits(p.r2) << ',' << p.provenance << '\n';
}

nlohmann::json provenance_json(const FrontierCurve& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < f.sources.size(); ++i) {
    nlohmann::json e = distribution_to_json(f.sources[i]);
    e["id"] = i;
    e["fingerprint"] = fingerprint(f.sources[i]);
    arr.push_back(std::move(e));
  }
  return {{"label", f.label}, {"sources", arr}};
}

double parse_bits(std::string_view s) {
  std::string lower;
  for (char ch : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "inf" || lower == "+inf" || lower == "infinity") return kInfinity;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw InputError("not a number of bits: '" + std::string(s) + "'");
  return v;
}

std::string format_bits(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(10) << std::fixed << v;
  return os.str();
}

}  // namespace bcleak
