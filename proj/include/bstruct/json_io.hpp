#ifndef BSTRUCT_JSON_IO_HPP
#define BSTRUCT_JSON_IO_HPP

// JSON schemas for magmas, coefficient groups, cochains, and leg operators,
// with path-tagged validation errors.  Operator entries travel as decimal
// strings ("p/q" over the rationals) so every value round-trips exactly;
// emission uses sorted keys (the default object ordering), keeping output
// byte-stable.

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cochain.hpp"
#include "tensorops.hpp"

namespace bstruct::json_io {

using json = nlohmann::json;
using cochain::Cochain;
using magma::MagmaMap;
using magma::MagmaTable;
using tensorops::FieldSpec;
using tensorops::LegOp;
using zlinalg::AbelianGroup;

using AnyOp = std::variant<LegOp<Rat>, LegOp<Fp>>;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw validation_error(path + ": " + what);
}

inline const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

inline int64_t to_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int64_t>();
}

// ---------------------------------------------------------------------------
// magma

inline MagmaTable parse_magma(const json& j, const std::string& path = "magma") {
  int64_t n = to_int(member(j, path, "n"), path + ".n");
  if (n < 1 || n > 64) fail(path + ".n", "size must be in 1..64");
  const json& rows = member(j, path, "table");
  if (!rows.is_array() || static_cast<int64_t>(rows.size()) != n)
    fail(path + ".table", "expected " + std::to_string(n) + " rows");
  std::vector<int> t;
  for (int64_t x = 0; x < n; ++x) {
    const json& row = rows[static_cast<size_t>(x)];
    std::string rp = path + ".table[" + std::to_string(x) + "]";
    if (!row.is_array() || static_cast<int64_t>(row.size()) != n)
      fail(rp, "expected " + std::to_string(n) + " entries");
    for (int64_t y = 0; y < n; ++y) {
      int64_t v = to_int(row[static_cast<size_t>(y)], rp + "[" + std::to_string(y) + "]");
      if (v < 0 || v >= n) fail(rp + "[" + std::to_string(y) + "]", "entry out of range");
      t.push_back(static_cast<int>(v));
    }
  }
  return MagmaTable(static_cast<int>(n), std::move(t));
}

inline json to_json(const MagmaTable& m) {
  json rows = json::array();
  for (int x = 0; x < m.n; ++x) {
    json row = json::array();
    for (int y = 0; y < m.n; ++y) row.push_back(m.at(x, y));
    rows.push_back(std::move(row));
  }
  return json{{"n", m.n}, {"table", std::move(rows)}};
}

inline MagmaMap parse_magma_map(const json& j, const std::string& path = "map") {
  MagmaTable src = parse_magma(member(j, path, "source"), path + ".source");
  MagmaTable tgt = parse_magma(member(j, path, "target"), path + ".target");
  const json& mv = member(j, path, "map");
  if (!mv.is_array() || static_cast<int>(mv.size()) != src.n)
    fail(path + ".map", "expected " + std::to_string(src.n) + " entries");
  std::vector<int> f;
  for (size_t i = 0; i < mv.size(); ++i) {
    int64_t v = to_int(mv[i], path + ".map[" + std::to_string(i) + "]");
    if (v < 0 || v >= tgt.n) fail(path + ".map[" + std::to_string(i) + "]", "out of range");
    f.push_back(static_cast<int>(v));
  }
  return MagmaMap{std::move(src), std::move(tgt), std::move(f)};
}

// ---------------------------------------------------------------------------
// coefficient group and cochains

inline AbelianGroup parse_group(const json& j, const std::string& path = "coeff") {
  const json& mods = member(j, path, "moduli");
  if (!mods.is_array() || mods.empty()) fail(path + ".moduli", "expected a nonempty array");
  AbelianGroup g;
  for (size_t i = 0; i < mods.size(); ++i) {
    int64_t m = to_int(mods[i], path + ".moduli[" + std::to_string(i) + "]");
    if (m < 0) fail(path + ".moduli[" + std::to_string(i) + "]", "modulus must be >= 0");
    g.moduli.push_back(m);
  }
  return g;
}

inline json to_json(const AbelianGroup& g) { return json{{"moduli", g.moduli}}; }

inline Cochain parse_cochain(const json& j, const std::string& path = "cochain") {
  Cochain c;
  c.A = parse_magma(member(j, path, "magma"), path + ".magma");
  c.B = parse_group(member(j, path, "coeff"), path + ".coeff");
  int64_t deg = to_int(member(j, path, "degree"), path + ".degree");
  if (deg < 1 || deg > 16) fail(path + ".degree", "degree must be in 1..16");
  c.degree = static_cast<int>(deg);
  int64_t want = cochain::pow_size(c.A.n, c.degree);
  const json& vals = member(j, path, "values");
  if (!vals.is_array() || static_cast<int64_t>(vals.size()) != want)
    fail(path + ".values", "expected " + std::to_string(want) + " entries");
  for (size_t i = 0; i < vals.size(); ++i) {
    const json& v = vals[i];
    std::string vp = path + ".values[" + std::to_string(i) + "]";
    if (!v.is_array() || v.size() != c.B.moduli.size())
      fail(vp, "expected " + std::to_string(c.B.moduli.size()) + " coordinates");
    zlinalg::GroupElement e;
    for (size_t k = 0; k < v.size(); ++k)
      e.push_back(to_int(v[k], vp + "[" + std::to_string(k) + "]"));
    c.values.push_back(zlinalg::reduce(c.B, e));
  }
  return c;
}

inline json to_json(const Cochain& c) {
  json vals = json::array();
  for (const auto& v : c.values) vals.push_back(v);
  return json{{"magma", to_json(c.A)},
              {"coeff", to_json(c.B)},
              {"degree", c.degree},
              {"values", std::move(vals)}};
}

// ---------------------------------------------------------------------------
// leg operators

inline FieldSpec parse_field(const json& j, const std::string& path) {
  FieldSpec f;
  if (j.is_string() && j.get<std::string>() == "rational") {
    f.rational = true;
    return f;
  }
  if (!j.is_object()) fail(path, "expected \"rational\" or {\"prime\": p}");
  if (j.contains("prime")) {
    f.rational = false;
    f.p = to_int(j["prime"], path + ".prime");
    validate(f);
    return f;
  }
  if (j.contains("rational")) {
    if (!j["rational"].is_boolean() || !j["rational"].get<bool>())
      fail(path + ".rational", "must be true");
    f.rational = true;
    return f;
  }
  fail(path, "expected \"rational\" or {\"prime\": p}");
}

inline json to_json(const FieldSpec& f) {
  if (f.rational) return json{{"rational", true}};
  return json{{"prime", f.p}};
}

inline Rat parse_rat(const std::string& s, const std::string& path) {
  try {
    Rat r(s);
    return r;
  } catch (const std::exception&) {
    fail(path, "cannot parse rational \"" + s + "\"");
  }
}

inline std::string rat_to_string(const Rat& r) {
  Int num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::vector<int64_t> parse_leg_dims(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of dims");
  std::vector<int64_t> legs;
  for (size_t i = 0; i < j.size(); ++i) {
    int64_t d = to_int(j[i], path + "[" + std::to_string(i) + "]");
    if (d < 1) fail(path + "[" + std::to_string(i) + "]", "dims must be positive");
    legs.push_back(d);
  }
  return legs;
}

inline AnyOp parse_operator(const json& j, const std::string& path = "operator") {
  FieldSpec f = parse_field(member(j, path, "field"), path + ".field");
  std::vector<int64_t> dom = parse_leg_dims(member(j, path, "leg_dims"), path + ".leg_dims");
  std::vector<int64_t> cod =
      j.contains("codomain_leg_dims")
          ? parse_leg_dims(j["codomain_leg_dims"], path + ".codomain_leg_dims")
          : dom;
  int64_t rows = tensorops::dim_product(cod), cols = tensorops::dim_product(dom);
  const json& ent = member(j, path, "entries");
  if (!ent.is_array() || static_cast<int64_t>(ent.size()) != rows)
    fail(path + ".entries", "expected " + std::to_string(rows) + " rows");
  auto entry_str = [&](size_t i, size_t k) -> std::string {
    const json& row = ent[i];
    std::string rp = path + ".entries[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int64_t>(row.size()) != cols)
      fail(rp, "expected " + std::to_string(cols) + " entries");
    const json& cell = row[k];
    std::string cp = rp + "[" + std::to_string(k) + "]";
    if (!cell.is_string()) fail(cp, "entries must be strings");
    return cell.get<std::string>();
  };
  if (f.rational) {
    LegOp<Rat> op{dom, cod, tensorops::make_mat(rows, cols, Rat(0))};
    for (int64_t i = 0; i < rows; ++i)
      for (int64_t k = 0; k < cols; ++k)
        op.m.at(i, k) = parse_rat(entry_str(static_cast<size_t>(i), static_cast<size_t>(k)),
                                  path + ".entries[" + std::to_string(i) + "][" +
                                      std::to_string(k) + "]");
    return op;
  }
  Fp zero(0, f.p);
  LegOp<Fp> op{dom, cod, tensorops::make_mat(rows, cols, zero)};
  for (int64_t i = 0; i < rows; ++i)
    for (int64_t k = 0; k < cols; ++k) {
      std::string s = entry_str(static_cast<size_t>(i), static_cast<size_t>(k));
      std::string cp =
          path + ".entries[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      try {
        size_t used = 0;
        int64_t v = std::stoll(s, &used);
        if (used != s.size()) fail(cp, "cannot parse integer \"" + s + "\"");
        op.m.at(i, k) = Fp(v, f.p);
      } catch (const validation_error&) {
        throw;
      } catch (const std::exception&) {
        fail(cp, "cannot parse integer \"" + s + "\"");
      }
    }
  return op;
}

inline json to_json(const LegOp<Rat>& op) {
  json ent = json::array();
  for (int64_t i = 0; i < op.m.rows; ++i) {
    json row = json::array();
    for (int64_t k = 0; k < op.m.cols; ++k) row.push_back(rat_to_string(op.m.at(i, k)));
    ent.push_back(std::move(row));
  }
  json j{{"field", json{{"rational", true}}},
         {"leg_dims", op.dom},
         {"entries", std::move(ent)}};
  if (op.cod != op.dom) j["codomain_leg_dims"] = op.cod;
  return j;
}

inline json to_json(const LegOp<Fp>& op) {
  json ent = json::array();
  int64_t p = 0;
  for (const auto& e : op.m.a)
    if (e.p) { p = e.p; break; }
  for (int64_t i = 0; i < op.m.rows; ++i) {
    json row = json::array();
    for (int64_t k = 0; k < op.m.cols; ++k) row.push_back(std::to_string(op.m.at(i, k).v));
    ent.push_back(std::move(row));
  }
  json j{{"field", json{{"prime", p}}},
         {"leg_dims", op.dom},
         {"entries", std::move(ent)}};
  if (op.cod != op.dom) j["codomain_leg_dims"] = op.cod;
  return j;
}

inline json to_json(const AnyOp& op) {
  return std::visit([](const auto& o) { return to_json(o); }, op);
}

}  // namespace bstruct::json_io

#endif
