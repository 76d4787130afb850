#include "hibicx/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace hibicx {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || s == "inf" || s == "-inf") return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

PosetFile parse_poset_text(std::string_view text, std::string name, int max_elements) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> relations;
  bool saw_elements = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks.front() == "elements:") {
      if (saw_elements)
        throw ValidationError("line " + std::to_string(lineno) + ": second elements: line");
      saw_elements = true;
      for (size_t i = 1; i < toks.size(); ++i) {
        if (!valid_identifier(toks[i]))
          throw ValidationError("line " + std::to_string(lineno) + ": bad identifier '" +
                                toks[i] + "'");
        elements.push_back(toks[i]);
      }
      if (elements.empty())
        throw ValidationError("line " + std::to_string(lineno) + ": no elements declared");
      continue;
    }
    if (!saw_elements)
      throw ValidationError("line " + std::to_string(lineno) +
                            ": expected an elements: line first");
    if (toks.size() != 3 || toks[1] != "<")
      throw ValidationError("line " + std::to_string(lineno) + ": expected 'a < b'");
    relations.emplace_back(toks[0], toks[2]);
  }
  if (!saw_elements) throw ValidationError("missing elements: line");

  PosetFile f;
  f.name = std::move(name);
  f.digest = fnv1a64_hex(text);
  try {
    f.poset = Poset::build(std::move(elements), relations, max_elements);
  } catch (const ValidationError& e) {
    throw ValidationError(f.name + ": " + e.what());
  }
  return f;
}

PosetFile parse_poset_file(const std::string& path, int max_elements) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem.erase(0, slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem.erase(dot);
  return parse_poset_text(ss.view(), stem, max_elements);
}

std::string serialize_poset(const Poset& p) {
  std::string out = "elements:";
  for (const auto& e : p.elements()) out += " " + e;
  out += "\n";
  for (auto [a, b] : p.covers())
    out += p.elements()[a] + " < " + p.elements()[b] + "\n";
  return out;
}

namespace {

Json exponent_map_json(const HatPoset& h, const ExponentMap& xi) {
  Json j = Json::object();
  for (Vertex v = 0; v < h.size(); ++v) j[h.name(v)] = xi[v];
  return j;
}

Json flags_json(const RingFlags& f) {
  return Json{{"gorenstein", f.gorenstein},
              {"level", f.level},
              {"anticanonical_level", f.anticanonical_level}};
}

Json prediction_json(const LimitPrediction& p) {
  switch (p.kind) {
    case LimitKind::MinusInfinity:
      return Json{{"kind", "minus_infinity"}};
    case LimitKind::Exact:
      return Json{{"kind", "exact"}, {"value", p.value}};
    case LimitKind::LowerBoundOnly:
      return Json{{"kind", "lower_bound_only"}, {"value", p.value}};
  }
  return {};
}

Json limit_fields(const LimitReport& r) {
  return Json{{"flags", flags_json(r.flags)},
              {"nonmin_count", r.nonmin_count},
              {"spread_minus_one", r.spread_minus_one},
              {"predicted_limit", prediction_json(r.predicted_limit)}};
}

}  // namespace

Json report_envelope(const PosetFile& f, const std::string& command, Json args, Json result) {
  return Json{{"tool", kToolVersion},
              {"command", command},
              {"args", std::move(args)},
              {"input", Json{{"name", f.name}, {"digest", "fnv1a64:" + f.digest}}},
              {"result", std::move(result)}};
}

Json info_result(const HatPoset& h) {
  const Poset& p = h.base();
  RingFlags flags = classify(h);
  auto mins = min_subset(h), nonmins = nonmin_subset(h), starts = starting_points(h);
  auto name_list = [&](const std::vector<Vertex>& vs) {
    Json a = Json::array();
    for (Vertex v : vs) a.push_back(h.name(v));
    return a;
  };

  Json ideals = Json::array();
  auto ideal_list = poset_ideals(p);
  for (PosetIdeal I : ideal_list) {
    Json members = Json::array();
    for (int i = 0; i < p.size(); ++i)
      if (I.contains(i)) members.push_back(p.elements()[i]);
    ideals.push_back(std::move(members));
  }

  Json covers = Json::array();
  for (auto [a, b] : p.covers()) covers.push_back(Json::array({p.elements()[a], p.elements()[b]}));

  Json relations = Json::array();
  auto rels = presentation(p);
  for (const auto& r : rels) relations.push_back(render_relation(p, r));

  Json dist = Json::array(), disp = Json::array();
  for (Vertex u = 0; u < h.size(); ++u)
    for (Vertex v = 0; v < h.size(); ++v) {
      if (u == v || !h.leq(u, v)) continue;
      dist.push_back(Json{{"from", h.name(u)}, {"to", h.name(v)}, {"d", h.dist(u, v)}});
      disp.push_back(Json{{"from", h.name(u)}, {"to", h.name(v)}, {"d", h.disp(u, v)}});
    }

  return Json{{"elements", p.elements()},
              {"covers", std::move(covers)},
              {"flags", flags_json(flags)},
              {"dist_bottom_top", h.dist_bottom_top()},
              {"min_subset", name_list(mins)},
              {"min_count", mins.size()},
              {"nonmin_subset", name_list(nonmins)},
              {"nonmin_count", nonmins.size()},
              {"starting_points", name_list(starts)},
              {"ideal_count", ideal_list.size()},
              {"ideals", std::move(ideals)},
              {"relation_count", rels.size()},
              {"relations", std::move(relations)},
              {"dist", std::move(dist)},
              {"disp", std::move(disp)}};
}

Json generators_result(const HatPoset& h, const GeneratorSet& gs) {
  Json gens = Json::array();
  for (const auto& g : gs.generators) gens.push_back(exponent_map_json(h, g));
  return Json{{"n", gs.n},
              {"count", gs.count()},
              {"degrees", gs.degree_spectrum},
              {"distinct_degrees", gs.distinct_degrees()},
              {"generators", std::move(gens)}};
}

Json complexity_result(const HatPoset& h, const ComplexityReport& r) {
  (void)h;
  Json table = Json::array();
  for (size_t i = 0; i < r.c.size(); ++i) {
    int e = static_cast<int>(i) + 1;
    Json row{{"e", e}, {"c_e", r.c[i]}};
    if (r.c[i] > 0)
      row["log_p_c_e_over_e"] =
          std::log(static_cast<double>(r.c[i])) / (std::log(static_cast<double>(r.p)) * e);
    else
      row["log_p_c_e_over_e"] = nullptr;
    table.push_back(std::move(row));
  }
  Json out{{"p", r.p}, {"e_max", r.e_max}, {"c", r.c}, {"table", std::move(table)}};
  out.update(limit_fields(r.limit));
  return out;
}

Json limit_result(const LimitReport& r) { return limit_fields(r); }

Json growth_result(int n_max, const std::vector<long long>& counts, long long spread) {
  return Json{{"n_max", n_max}, {"h", counts}, {"spread_minus_one", spread}};
}

std::string growth_csv(const std::vector<long long>& counts) {
  std::string out = "n,h\n";
  for (size_t i = 0; i < counts.size(); ++i)
    out += std::to_string(i + 1) + "," + std::to_string(counts[i]) + "\n";
  return out;
}

std::string render_text(const std::string& command, const Json& report) {
  std::ostringstream out;
  const Json& r = report.at("result");
  if (command == "info") {
    out << "poset " << report.at("input").at("name").get<std::string>() << "\n";
    out << "  elements: " << r.at("elements").size() << ", covers: " << r.at("covers").size()
        << "\n";
    out << "  gorenstein=" << r.at("flags").at("gorenstein") << " level="
        << r.at("flags").at("level") << " anticanonical_level="
        << r.at("flags").at("anticanonical_level") << "\n";
    out << "  dist(-inf,inf)=" << r.at("dist_bottom_top") << "  |min|=" << r.at("min_count")
        << "  |nonmin|=" << r.at("nonmin_count") << "\n";
    out << "  starting points:";
    for (const auto& s : r.at("starting_points")) out << " " << s.get<std::string>();
    out << "\n  poset ideals: " << r.at("ideal_count") << ", relations: "
        << r.at("relation_count") << "\n";
  } else if (command == "generators") {
    long long n = r.at("n").get<long long>();
    if (n == -1)
      out << "omega";
    else
      out << "omega^(-" << n << ")";
    out << ": " << r.at("count") << " minimal generators, degrees ";
    out << r.at("distinct_degrees").dump() << "\n";
  } else if (command == "complexity") {
    out << "p=" << r.at("p") << "\n";
    out << "  e | c_e | log_p(c_e)/e\n";
    for (const auto& row : r.at("table")) {
      out << "  " << row.at("e") << " | " << row.at("c_e") << " | ";
      if (row.at("log_p_c_e_over_e").is_null())
        out << "-\n";
      else
        out << row.at("log_p_c_e_over_e").get<double>() << "\n";
    }
    out << "  predicted limit: " << r.at("predicted_limit").dump() << "\n";
  } else if (command == "limit") {
    out << "flags: " << r.at("flags").dump() << "\n";
    out << "|nonmin|=" << r.at("nonmin_count") << " spread-1=" << r.at("spread_minus_one")
        << "\n";
    out << "predicted limit: " << r.at("predicted_limit").dump() << "\n";
  } else if (command == "growth") {
    std::vector<long long> counts = r.at("h").get<std::vector<long long>>();
    out << growth_csv(counts);
    out << "spread_minus_one," << r.at("spread_minus_one") << "\n";
  }
  return out.str();
}

namespace {

int env_or(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return std::atoi(v);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Hibi ring Frobenius-complexity invariants from finite posets"};
  app.require_subcommand(1);

  std::string file;
  bool as_text = false, as_json = false;
  int guard = env_or("HIBICX_GUARD", kDefaultMaxElements);
  int complexity_guard = env_or("HIBICX_COMPLEXITY_GUARD", kComplexityMaxElements);
  long long n = 1, p = 2;
  int emax = 2, nmax = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "poset file")->required();
    sub->add_flag("--json", as_json, "JSON report (default)");
    sub->add_flag("--text", as_text, "plain-text report");
    sub->add_option("--guard", guard, "max poset elements");
  };
  CLI::App* info = app.add_subcommand("info", "flags, subsets and tables");
  add_common(info);
  CLI::App* generators = app.add_subcommand("generators", "minimal generators of omega^(-n)");
  add_common(generators);
  generators->add_option("--n", n, "power (n >= 0, or -1 for omega)");
  CLI::App* complexity = app.add_subcommand("complexity", "brute-force complexity sequence");
  add_common(complexity);
  complexity->add_option("--p", p, "prime")->required();
  complexity->add_option("--emax", emax, "largest degree e");
  CLI::App* limit = app.add_subcommand("limit", "predicted limit Frobenius complexity");
  add_common(limit);
  limit->add_option("--nmax", nmax, "growth horizon (default |P hat|+3)");
  CLI::App* growth = app.add_subcommand("growth", "generator counts h(n) as CSV");
  add_common(growth);
  growth->add_option("--nmax", nmax, "growth horizon (default |P hat|+3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    PosetFile f = parse_poset_file(file, guard);
    HatPoset h(f.poset);
    std::string command;
    Json args = Json::object(), result;

    if (info->parsed()) {
      command = "info";
      result = info_result(h);
    } else if (generators->parsed()) {
      command = "generators";
      args["n"] = n;
      GeneratorSet gs = n >= 0 ? enumerate_min_generators(h, n)
                               : (n == -1 ? canonical_generators(h)
                                          : throw ValidationError("n must be >= -1"));
      result = generators_result(h, gs);
    } else if (complexity->parsed()) {
      command = "complexity";
      args["p"] = p;
      args["emax"] = emax;
      result = complexity_result(h, complexity_report(h, p, emax, complexity_guard));
    } else if (limit->parsed()) {
      command = "limit";
      if (nmax <= 0) nmax = h.size() + 3;
      args["nmax"] = nmax;
      result = limit_result(predicted_limit_cx(h, nmax));
    } else {
      command = "growth";
      if (nmax <= 0) nmax = h.size() + 3;
      args["nmax"] = nmax;
      auto counts = count_generators(h, nmax);
      result = growth_result(nmax, counts, symbolic_spread_minus_one(h, nmax));
    }

    Json report = report_envelope(f, command, std::move(args), std::move(result));
    if (as_text)
      std::cout << render_text(command, report);
    else
      std::cout << report.dump(2) << "\n";
    return 0;
  } catch (const GuardError& e) {
    std::cerr << "error (resource guard): " << e.what() << "\n";
    return 3;
  } catch (const InconclusiveError& e) {
    std::cerr << "error (inconclusive): " << e.what() << "\n";
    if (!e.partial_data.empty()) {
      std::cerr << "partial counts:";
      for (long long x : e.partial_data) std::cerr << " " << x;
      std::cerr << "\n";
    }
    return 4;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hibicx
