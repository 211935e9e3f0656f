#include "hypercone/json_io.hpp"

#include <stdexcept>

namespace hypercone {

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::runtime_error("expected a rational as \"num/den\" string");
}

}  // namespace

json poly_to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json t;
    t["c"] = rational_str(c);
    t["e"] = m;
    terms.push_back(std::move(t));
  }
  return json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

Poly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("terms"))
    throw std::runtime_error("polynomial JSON needs nvars and terms");
  Poly p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms")) {
    Monomial m = t.at("e").get<Monomial>();
    p.add_term(m, rational_from_json(t.at("c")));
  }
  return p;
}

json polyvec_to_json(const PolyVec& v) {
  json entries = json::array();
  for (const auto& p : v) entries.push_back(poly_to_json(p));
  return json{{"entries", std::move(entries)}};
}

PolyVec polyvec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries"))
    throw std::runtime_error("polynomial vector JSON needs entries");
  PolyVec v;
  for (const auto& e : j.at("entries")) v.push_back(poly_from_json(e));
  if (v.empty()) throw std::runtime_error("polynomial vector is empty");
  if (!uniform_nvars(v)) throw std::runtime_error("polynomial vector entries disagree on nvars");
  return v;
}

json pencil_to_json(const SymPencil& p) {
  json mats = json::array();
  for (const auto& m : p.matrices) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.size(); ++j) row.push_back(rational_str(m.at(i, j)));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  return json{{"n", p.nvars()}, {"m", p.size()}, {"matrices", std::move(mats)}};
}

SymPencil pencil_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("m") || !j.contains("matrices"))
    throw std::runtime_error("pencil JSON needs n, m, matrices");
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  const json& mats = j.at("matrices");
  if (static_cast<int>(mats.size()) != n) throw std::runtime_error("pencil matrix count differs from n");
  std::vector<SymMatrix> out;
  for (const auto& rows : mats) {
    if (static_cast<int>(rows.size()) != m) throw std::runtime_error("pencil matrix row count differs from m");
    SymMatrix a(m);
    std::vector<std::vector<Rational>> raw(m, std::vector<Rational>(m));
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(rows[i].size()) != m)
        throw std::runtime_error("pencil matrix is not square");
      for (int c = 0; c < m; ++c) raw[i][c] = rational_from_json(rows[i][c]);
    }
    for (int i = 0; i < m; ++i)
      for (int c = i; c < m; ++c) {
        if (raw[i][c] != raw[c][i]) throw std::runtime_error("pencil matrix is not symmetric");
        a.set(i, c, raw[i][c]);
      }
    out.push_back(std::move(a));
  }
  return SymPencil(std::move(out));
}

json raycone_to_json(const RayCone& c) {
  json rays = json::array();
  for (const auto& r : c.rays) {
    json row = json::array();
    for (const auto& x : r) row.push_back(rational_str(x));
    rays.push_back(std::move(row));
  }
  return json{{"dim", c.dim}, {"rays", std::move(rays)}};
}

RayCone raycone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rays"))
    throw std::runtime_error("ray cone JSON needs dim and rays");
  const int dim = j.at("dim").get<int>();
  std::vector<std::vector<Rational>> rays;
  for (const auto& row : j.at("rays")) {
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    rays.push_back(std::move(r));
  }
  return RayCone::make(dim, std::move(rays));
}

json forms_to_json(int dim, const std::vector<LinForm>& forms) {
  json rays = json::array();
  for (const auto& f : forms) {
    json row = json::array();
    for (const auto& x : f.coeffs) row.push_back(rational_str(x));
    rays.push_back(std::move(row));
  }
  return json{{"dim", dim}, {"rays", std::move(rays)}};
}

json unipoly_to_json(const UniPoly& u) {
  json out = json::array();
  for (const auto& c : u.coeffs()) out.push_back(rational_str(c));
  return out;
}

UniPoly unipoly_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("univariate polynomial JSON must be an array");
  std::vector<Rational> cs;
  for (const auto& x : j) cs.push_back(rational_from_json(x));
  return UniPoly(std::move(cs));
}

json report_to_json(const SampleReport& r) {
  json failures = json::array();
  for (const auto& pt : r.failures) {
    json row = json::array();
    for (const auto& x : pt) row.push_back(rational_str(x));
    failures.push_back(std::move(row));
  }
  return json{{"verdict", r.pass() ? "pass" : "fail"},
              {"samples", r.samples},
              {"seed", r.seed},
              {"failures", std::move(failures)}};
}

json certreport_to_json(const CertReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back(json{{"name", s.name},
                         {"pass", s.pass},
                         {"exact", s.exact},
                         {"mandatory", s.mandatory},
                         {"evidence", s.evidence}});
  }
  return json{{"overall", r.overall ? "pass" : "fail"},
              {"samples", r.samples},
              {"seed", r.seed},
              {"steps", std::move(steps)}};
}

std::vector<Rational> point_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("point JSON must be an array");
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(parse_rational(cur));
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(parse_rational(cur));
  if (out.empty()) throw std::runtime_error("empty point");
  return out;
}

}  // namespace hypercone
