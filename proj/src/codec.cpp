#include "srct/codec.hpp"

#include "srct/error.hpp"

namespace srct {

namespace {

Json matrix_json(const FieldMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::uint32_t v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Documents built in memory hold signed integers; parsed ones hold unsigned.
bool non_negative_integer(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

const Json& field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw MalformedDocument(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t unsigned_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!non_negative_integer(v)) {
    throw MalformedDocument(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

FieldMatrix matrix_from(const Json& rows, std::size_t cols, std::uint64_t p, const std::string& where) {
  if (!rows.is_array()) throw MalformedDocument(where + " must be an array of rows");
  std::vector<std::vector<std::uint64_t>> data;
  data.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array()) throw MalformedDocument(where + " rows must be arrays");
    if (row.size() != cols) {
      throw ValidationError(where + " has a row of length " + std::to_string(row.size()) + ", expected " +
                            std::to_string(cols));
    }
    std::vector<std::uint64_t> vals;
    vals.reserve(cols);
    for (const auto& v : row) {
      if (!non_negative_integer(v)) throw MalformedDocument(where + " entries must be non-negative integers");
      const auto x = v.get<std::uint64_t>();
      if (x >= p) throw ValidationError(where + " entry " + std::to_string(x) + " is not below p");
      vals.push_back(x);
    }
    data.push_back(std::move(vals));
  }
  return FieldMatrix::from_rows(data, cols, p);
}

}  // namespace

Json serialize_code(const LinearStorageCode& code) {
  Json doc;
  doc["version"] = kCodeDocumentVersion;
  doc["p"] = code.p;
  doc["n"] = code.n;
  doc["ell"] = code.ell;
  doc["B_s"] = code.B_s;
  doc["T"] = code.T;
  Json nodes = Json::array();
  for (const auto& m : code.node_maps) nodes.push_back(matrix_json(m));
  doc["node_maps"] = std::move(nodes);
  Json repairs = Json::array();
  for (int i = 1; i <= code.n; ++i) {
    Json row = Json::array();
    for (int j = 1; j <= code.n; ++j) row.push_back(matrix_json(code.repair(i, j)));
    repairs.push_back(std::move(row));
  }
  doc["repair_maps"] = std::move(repairs);
  return doc;
}

LinearStorageCode deserialize_code(const Json& doc) {
  if (!doc.is_object()) throw MalformedDocument("code document must be a JSON object");
  const auto version = unsigned_field(doc, "version");
  if (version != kCodeDocumentVersion) {
    throw UnsupportedVersion("code document version " + std::to_string(version) + " is not supported");
  }
  LinearStorageCode code;
  code.p = unsigned_field(doc, "p");
  const auto n = unsigned_field(doc, "n");
  const auto ell = unsigned_field(doc, "ell");
  code.B_s = unsigned_field(doc, "B_s");
  code.T = unsigned_field(doc, "T");

  if (code.p >= (1ULL << 31) || !is_prime(code.p)) throw ValidationError("p must be a prime below 2^31");
  if (n < 4 || n > 64) throw ValidationError("n must lie in 4..64");
  code.n = static_cast<int>(n);
  code.k = code.d = code.n - 1;
  if (ell > n - 3) throw ValidationError("ell must lie in 0..n-3");
  code.ell = static_cast<int>(ell);
  if (code.T == 0 || code.B_s > code.T) throw ValidationError("need 0 <= B_s <= T and T > 0");

  const Json& nodes = field(doc, "node_maps");
  if (!nodes.is_array()) throw MalformedDocument("node_maps must be an array");
  if (nodes.size() != n) throw ValidationError("node_maps must hold n matrices");
  for (std::size_t i = 0; i < n; ++i) {
    code.node_maps.push_back(matrix_from(nodes[i], code.T, code.p, "node_maps[" + std::to_string(i) + "]"));
  }

  const Json& repairs = field(doc, "repair_maps");
  if (!repairs.is_array()) throw MalformedDocument("repair_maps must be an array");
  if (repairs.size() != n) throw ValidationError("repair_maps must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (!repairs[i].is_array()) throw MalformedDocument("repair_maps rows must be arrays");
    if (repairs[i].size() != n) throw ValidationError("repair_maps must be n x n");
    for (std::size_t j = 0; j < n; ++j) {
      const std::string where = "repair_maps[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      FieldMatrix m = matrix_from(repairs[i][j], code.T, code.p, where);
      if (i == j && m.rows() != 0) throw ValidationError(where + " must be empty");
      if (m.rows() > 0) {
        const FieldMatrix& w = code.node_maps[i];
        if (mat_rank(w.stacked(m)) != mat_rank(w)) {
          throw ValidationError(where + " is not a function of node " + std::to_string(i + 1));
        }
      }
      code.repair_maps.push_back(std::move(m));
    }
  }
  return code;
}

LinearStorageCode parse_code(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedDocument(std::string("not valid JSON: ") + e.what());
  }
  return deserialize_code(doc);
}

Json to_json(const RatePoint& pt) { return Json{{"alpha", pt.alpha_bar.str()}, {"beta", pt.beta_bar.str()}}; }

Json to_json(const RegionVerdict& v) {
  Json out;
  out["version"] = kReportVersion;
  out["params"] = {{"n", v.params.n}, {"k", v.params.k}, {"d", v.params.d}, {"ell", v.params.ell}};
  out["gamma"] = v.gamma;
  out["corner"] = to_json(v.corner);
  out["in_ps"] = v.in_ps;
  out["ell_hat"] = v.ell_hat;
  out["ell_star"] = v.ell_star;
  out["single_corner"] = to_string(v.single_corner);
  Json ob;
  if (v.outer.kind == OuterBound::Kind::Linear) {
    ob["kind"] = "linear";
    ob["slope"] = v.outer.slope;
  } else {
    ob["kind"] = "vertical";
    ob["alpha_hat"] = v.outer.alpha_hat.str();
  }
  ob["beta_hat"] = v.outer.beta_hat.str();
  ob["text"] = v.outer.describe();
  out["outer_bound"] = std::move(ob);
  return out;
}

namespace {

Json family_json(const FamilyResult& f) {
  return Json{{"family", f.family}, {"checks", f.checks}, {"pass", f.pass}, {"witnesses", f.witnesses}};
}

std::string var_list(const VarSet& vs) {
  std::string s;
  for (const auto& v : vs) {
    if (!s.empty()) s += ' ';
    s += v.str();
  }
  return s;
}

}  // namespace

Json to_json(const SdssReport& r) {
  return Json{{"pass", r.pass()},
              {"reconstruction", family_json(r.reconstruction)},
              {"regeneration", family_json(r.regeneration)},
              {"security", family_json(r.security)}};
}

Json to_json(const SymmetryReport& r) {
  Json viol = Json::array();
  for (const auto& v : r.violations) {
    viol.push_back(
        {{"subset", var_list(v.subset)}, {"permutation", v.permutation}, {"before", v.before}, {"after", v.after}});
  }
  return Json{{"pass", r.pass()}, {"evaluations", r.evaluations}, {"violations", std::move(viol)}};
}

Json to_json(const std::vector<CatalogEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    out.push_back({{"name", e.name},
                   {"indices", e.indices},
                   {"lhs", e.lhs.str()},
                   {"rhs", e.rhs.str()},
                   {"slack", e.slack.str()},
                   {"pass", e.pass}});
  }
  return out;
}

Json to_json(const CoeffSweepReport& r) {
  Json ce = Json::array();
  for (const auto& c : r.counterexamples) {
    ce.push_back(
        {{"kind", c.kind}, {"k", c.k}, {"d", c.d}, {"ell", c.ell}, {"check", c.check}, {"detail", c.detail}});
  }
  return Json{{"version", kReportVersion},
              {"mode", r.mode == SweepMode::Kd ? "kd" : "kld"},
              {"bound", r.bound},
              {"tuples", r.tuples},
              {"checks", r.checks},
              {"pass", r.pass()},
              {"counterexamples", std::move(ce)}};
}

}  // namespace srct
