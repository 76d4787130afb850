#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hibicx/frobenius.hpp"

namespace hibicx {

inline constexpr const char* kToolVersion = "hibi-cx 0.1.0";

using Json = nlohmann::ordered_json;

/// Parsed input file: one "elements:" line, then "a < b" relation lines,
/// '#' starts a comment. Identifiers are [A-Za-z0-9_]+ and may not shadow the
/// adjoined "inf" / "-inf".
struct PosetFile {
  std::string name;    // file stem
  Poset poset;         // reduced covers
  std::string digest;  // fnv1a64 over the raw bytes
};

PosetFile parse_poset_text(std::string_view text, std::string name,
                           int max_elements = kDefaultMaxElements);
PosetFile parse_poset_file(const std::string& path, int max_elements = kDefaultMaxElements);

// Canonical text form: the elements line plus one line per cover.
std::string serialize_poset(const Poset& p);

std::string fnv1a64_hex(std::string_view bytes);

// Report builders. All output is deterministic: identical inputs give
// byte-identical JSON.
Json report_envelope(const PosetFile& f, const std::string& command, Json args, Json result);
Json info_result(const HatPoset& h);
Json generators_result(const HatPoset& h, const GeneratorSet& gs);
Json complexity_result(const HatPoset& h, const ComplexityReport& r);
Json limit_result(const LimitReport& r);
Json growth_result(int n_max, const std::vector<long long>& counts, long long spread);

std::string render_text(const std::string& command, const Json& report);
std::string growth_csv(const std::vector<long long>& counts);

// Full command dispatch; returns the process exit code (0 ok, 2 validation,
// 3 resource guard, 4 inconclusive).
int run_cli(int argc, const char* const* argv);

}  // namespace hibicx
