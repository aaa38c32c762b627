#include "weylprop/basis_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include <unistd.h>

#include "weylprop/errors.hpp"

namespace weylprop {

using nlohmann::json;

namespace {

json legs_json(std::uint32_t mask) {
  json a = json::array();
  for (int l = 0; l < 32; ++l)
    if (mask & (std::uint32_t{1} << l)) a.push_back(l + 1);
  return a;
}

std::uint32_t legs_from(const json& a, int arity) {
  if (!a.is_array()) throw InputError("leg list must be an array");
  std::uint32_t mask = 0;
  for (const auto& x : a) {
    if (!x.is_number_integer()) throw InputError("leg labels must be integers");
    const int l = x.get<int>();
    if (l < 1 || l > arity) throw InputError("leg label out of range");
    mask |= std::uint32_t{1} << (l - 1);
  }
  return mask;
}

}  // namespace

json graph_record(const PropGraph& g) {
  json labels = json::array();
  json in = json::array();
  json out = json::array();
  json edges = json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    labels.push_back({g.labels[v].r, g.labels[v].t, g.labels[v].g});
    in.push_back(legs_json(g.in_legs[v]));
    out.push_back(legs_json(g.out_legs[v]));
    for (std::size_t w = 0; w < g.size(); ++w)
      if (g.edge(v, w) > 0) edges.push_back({v, w, g.edge(v, w)});
  }
  return {{"labels", labels}, {"in", in}, {"out", out}, {"edges", edges}};
}

PropGraph graph_from_record(const json& j, int r, int t) {
  try {
    PropGraph g;
    g.r = r;
    g.t = t;
    const auto& labels = j.at("labels");
    const auto& in = j.at("in");
    const auto& out = j.at("out");
    const std::size_t p = labels.size();
    if (p == 0 || in.size() != p || out.size() != p) throw InputError("graph record arrays disagree in length");
    for (std::size_t v = 0; v < p; ++v) {
      const auto& l = labels.at(v);
      if (!l.is_array() || l.size() != 3) throw InputError("vertex label must be [r, t, g]");
      g.labels.push_back({l.at(0).get<int>(), l.at(1).get<int>(), l.at(2).get<int>()});
      g.in_legs.push_back(legs_from(in.at(v), r));
      g.out_legs.push_back(legs_from(out.at(v), t));
    }
    g.edges.assign(p * p, 0);
    for (const auto& e : j.at("edges")) {
      const auto a = e.at(0).get<std::size_t>();
      const auto b = e.at(1).get<std::size_t>();
      if (a >= p || b >= p) throw InputError("edge endpoint out of range");
      g.edges[a * p + b] = e.at(2).get<int>();
    }
    return g;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed graph record: ") + e.what());
  }
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* v = std::getenv("WEYLPROP_CACHE_DIR");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

BasisCache::BasisCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path BasisCache::file_for(int r, int t, int g, int p) const {
  std::ostringstream name;
  name << "basis_r" << r << "_t" << t << "_g" << g << "_p" << p << ".json";
  return dir_ / name.str();
}

std::string BasisCache::serialize(int r, int t, int g, int p, const BasisLevel& level) {
  json graphs = json::array();
  json nulls = json::array();
  for (const auto& x : level.graphs) graphs.push_back(graph_record(x));
  for (const auto& x : level.null_graphs) nulls.push_back(graph_record(x));
  json doc = {{"format_version", kBasisCacheFormatVersion},
              {"r", r},
              {"t", t},
              {"g", g},
              {"p", p},
              {"graphs", graphs},
              {"null_graphs", nulls}};
  return doc.dump() + "\n";
}

std::optional<BasisLevel> BasisCache::load(int r, int t, int g, int p) const {
  const auto path = file_for(r, t, g, p);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version") || doc.at("format_version") != kBasisCacheFormatVersion) {
    return std::nullopt;
  }
  if (doc.value("r", -1) != r || doc.value("t", -1) != t || doc.value("g", -1) != g || doc.value("p", -1) != p) {
    throw InputError(path.string() + ": cache key does not match its file name");
  }
  BasisLevel level;
  auto read = [&](const char* name, std::vector<PropGraph>& into, bool expect_zero) {
    if (!doc.contains(name) || !doc.at(name).is_array()) throw InputError(path.string() + ": missing " + name);
    for (const auto& rec : doc.at(name)) {
      PropGraph x = graph_from_record(rec, r, t);
      validate(x);
      const auto c = canonical_form(x);
      if (c.graph != x || c.zero != expect_zero || x.genus() != g || static_cast<int>(x.size()) != p) {
        throw InputError(path.string() + ": cached graph is not a canonical class of this cell");
      }
      into.push_back(std::move(x));
    }
  };
  read("graphs", level.graphs, false);
  read("null_graphs", level.null_graphs, true);
  return level;
}

void BasisCache::store(int r, int t, int g, int p, const BasisLevel& level) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw InputError("cannot create cache directory " + dir_.string() + ": " + ec.message());
  const auto path = file_for(r, t, g, p);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << serialize(r, t, g, p, level);
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot rename into " + path.string() + ": " + ec.message());
}

BasisLevel cached_level(int r, int t, int g, int p, const BasisCache* cache) {
  if (p < 1) return {};
  BasisLevel level;
  int have = 0;
  // Start from the deepest cached level at or below p.
  if (cache != nullptr) {
    for (int q = p; q >= 1; --q) {
      if (auto hit = cache->load(r, t, g, q)) {
        level = std::move(*hit);
        have = q;
        break;
      }
    }
  }
  if (have == 0) {
    level = first_level(r, t, g);
    have = 1;
    if (cache != nullptr) cache->store(r, t, g, 1, level);
  }
  for (int q = have + 1; q <= p; ++q) {
    if (level.graphs.empty() && level.null_graphs.empty()) return {};
    level = next_level(level, r, t, g);
    if (cache != nullptr) cache->store(r, t, g, q, level);
  }
  return level;
}

}  // namespace weylprop
