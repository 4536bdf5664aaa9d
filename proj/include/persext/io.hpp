#pragma once

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "persext/pmodule.hpp"
#include "persext/poset.hpp"

// File input for posets and modules, plus the builtin module registry used
// by the command line tool.  Every malformed input throws UsageError with a
// message naming the offending token.

namespace persext {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- poset input ----

// "grid:<n>" is accepted anywhere a poset is; everything else is a file path.
inline bool is_grid_spec(const std::string& spec) { return spec.rfind("grid:", 0) == 0; }

inline int parse_grid_size(const std::string& spec) {
  const std::string body = spec.substr(5);
  int n = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), n);
  if (ec != std::errc{} || ptr != body.data() + body.size() || n < 0)
    throw UsageError("bad grid size in \"" + spec + "\" (expected grid:<n> with n >= 0)");
  return n;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
}

// {"elements": ["a", ...], "covers": [["a", "b"], ...]}
inline std::shared_ptr<const Poset> poset_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
    throw UsageError(where + ": poset needs \"elements\" and \"covers\"");
  const json& je = j["elements"];
  const json& jc = j["covers"];
  if (!je.is_array() || !jc.is_array())
    throw UsageError(where + ": \"elements\" and \"covers\" must be arrays");
  std::vector<std::string> elements;
  for (const json& e : je) {
    if (!e.is_string()) throw UsageError(where + ": element ids must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (const json& c : jc) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      throw UsageError(where + ": each cover must be a [below, above] pair of ids");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  try {
    return std::make_shared<const Poset>(Poset::from_covers(std::move(elements), covers));
  } catch (const PosetError& e) {
    throw UsageError(where + ": " + e.what());
  }
}

// Poset given either as "grid:<n>" / a file path (string form) or inline JSON.
inline std::shared_ptr<const Poset> poset_from_spec(const json& spec, const std::string& where) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (is_grid_spec(s)) return std::make_shared<const Poset>(Poset::grid(parse_grid_size(s)));
    return poset_from_json(read_json_file(s), s);
  }
  return poset_from_json(spec, where);
}

inline std::shared_ptr<const Poset> load_poset(const std::string& spec) {
  return poset_from_spec(json(spec), spec);
}

// ---- module files ----
// {"poset": <spec>, "field": "p:32003" | "q", "dims": {"v": n, ...},
//  "maps": {"p->q": [[entries]], ...}}; missing covers get zero maps.

inline std::shared_ptr<const Poset> module_file_poset(const json& j, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": module file must be a JSON object");
  if (!j.contains("poset")) return nullptr;
  return poset_from_spec(j["poset"], where);
}

inline bool module_file_field(const json& j, FieldSpec& out) {
  if (!j.is_object() || !j.contains("field")) return false;
  if (!j["field"].is_string()) throw UsageError("\"field\" must be a string");
  out = FieldSpec::parse(j["field"].get<std::string>());
  return true;
}

template <class F>
typename F::Elem parse_entry(F field, const json& v, const std::string& where) {
  if (v.is_number_integer() || v.is_number_unsigned()) {
    long long n = 0;
    v.get_to(n);
    return field.from_int(n);
  }
  if (v.is_string()) {
    std::string s;
    v.get_to(s);
    return field.parse(s);
  }
  throw UsageError(where + ": matrix entries must be integers or strings");
}

template <class F>
PModule<F> module_from_json(const json& j, std::shared_ptr<const Poset> poset, F field,
                            const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": module file must be a JSON object");
  const Poset& ps = *poset;
  PModule<F> m(poset, field);
  if (j.contains("dims")) {
    const json& jd = j["dims"];
    if (!jd.is_object()) throw UsageError(where + ": \"dims\" must map vertex ids to sizes");
    for (const auto& [id, val] : jd.items()) {
      int v;
      try {
        v = ps.index(id);
      } catch (const PosetError&) {
        throw UsageError(where + ": unknown vertex \"" + id + "\" in dims");
      }
      if (!val.is_number_integer() && !val.is_number_unsigned())
        throw UsageError(where + ": dimension at \"" + id + "\" must be an integer");
      long long d = 0;
      val.get_to(d);
      if (d < 0) throw UsageError(where + ": dimension at \"" + id + "\" must be >= 0");
      m.dims[v] = static_cast<int>(d);
    }
  }
  reshape_zero_maps(m);
  if (j.contains("maps")) {
    const json& jm = j["maps"];
    if (!jm.is_object()) throw UsageError(where + ": \"maps\" must map cover keys to matrices");
    for (const auto& [key, val] : jm.items()) {
      std::size_t arrow = key.find("->");
      if (arrow == std::string::npos)
        throw UsageError(where + ": map key \"" + key + "\" is not of the form \"p->q\"");
      auto trim = [](std::string s) {
        std::size_t a = s.find_first_not_of(' ');
        std::size_t b = s.find_last_not_of(' ');
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string pid = trim(key.substr(0, arrow));
      const std::string qid = trim(key.substr(arrow + 2));
      int p, q;
      try {
        p = ps.index(pid);
        q = ps.index(qid);
      } catch (const PosetError& e) {
        throw UsageError(where + ": map key \"" + key + "\": " + e.what());
      }
      int c = ps.cover_index(p, q);
      if (c < 0)
        throw UsageError(where + ": map key \"" + key + "\" is not a covering relation");
      if (!val.is_array())
        throw UsageError(where + ": map \"" + key + "\" must be an array of rows");
      int rows = static_cast<int>(val.size());
      int cols = rows > 0 ? static_cast<int>(val[0].size()) : 0;
      Matrix<F> mat(field, rows, cols);
      for (int r = 0; r < rows; ++r) {
        if (!val[r].is_array() || static_cast<int>(val[r].size()) != cols)
          throw UsageError(where + ": map \"" + key + "\" has ragged rows");
        for (int cc = 0; cc < cols; ++cc)
          mat.at(r, cc) = parse_entry(field, val[r][cc], where + ": map \"" + key + "\"");
      }
      m.maps[c] = std::move(mat);
    }
  }
  return m;
}

// ---- builtin modules ----
// Registry keys (after the "builtin:" prefix): interval_full, trivial,
// simple:<v>, projective:<v>, hook, diagonal, sum:(a,b).

inline std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

template <class F>
int builtin_vertex(const Poset& ps, const std::string& id, const std::string& token, F) {
  try {
    return ps.index(id);
  } catch (const PosetError&) {
    throw UsageError("unknown vertex \"" + id + "\" in \"" + token + "\"");
  }
}

template <class F>
PModule<F> builtin_module(const std::string& body, std::shared_ptr<const Poset> poset, F field) {
  const std::string token = "builtin:" + body;
  try {
    if (body == "interval_full") return interval_full(poset, field);
    if (body == "trivial") return trivial_ones(poset, field);
    if (body == "hook") return hook_module(poset, field);
    if (body == "diagonal") return diagonal_module(poset, field);
    if (body.rfind("simple:", 0) == 0)
      return simple(poset, field, builtin_vertex(*poset, body.substr(7), token, field));
    if (body.rfind("projective:", 0) == 0)
      return projective(poset, field, builtin_vertex(*poset, body.substr(11), token, field));
    if (body.rfind("sum:", 0) == 0) {
      const std::string inner = body.substr(4);
      if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
        throw UsageError("\"" + token + "\" needs a parenthesized summand list");
      std::vector<std::string> parts = split_top_level(inner.substr(1, inner.size() - 2));
      if (parts.size() < 2)
        throw UsageError("\"" + token + "\" needs at least two summands");
      PModule<F> acc = builtin_module(parts[0], poset, field);
      for (std::size_t i = 1; i < parts.size(); ++i)
        acc = direct_sum(acc, builtin_module(parts[i], poset, field));
      return acc;
    }
  } catch (const std::invalid_argument& e) {
    // grid-only builtins on the wrong poset
    throw UsageError("\"" + token + "\": " + e.what());
  }
  throw UsageError("unknown builtin module \"" + token + "\"");
}

// A module argument is either "builtin:<name>" or a file path.
inline bool is_builtin_spec(const std::string& spec) { return spec.rfind("builtin:", 0) == 0; }

}  // namespace persext
