#include "qha/datum_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qha/errors.hpp"

namespace qha {

using nlohmann::json;

namespace {

void only_fields(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto& [k, v] : j.items())
    if (!ok.count(k)) throw SchemaError(where + ": unknown field '" + k + "'");
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

long as_long(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<long>();
}

std::vector<long> as_longs(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of integers");
  std::vector<long> v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(as_long(j[k], where + "[" + std::to_string(k) + "]"));
  return v;
}

IntMatrix as_matrix(const json& j, const std::string& where, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw SchemaError(where + ": expected " + std::to_string(rows) + " rows");
  IntMatrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    m.push_back(as_longs(j[i], where + "[" + std::to_string(i) + "]"));
    if (m.back().size() != cols) throw SchemaError(where + "[" + std::to_string(i) + "]: expected " + std::to_string(cols) + " entries");
  }
  return m;
}

}  // namespace

const char* datum_schema() {
  return R"(Datum file (JSON), schema 1. Indices are 0-based.
{
  "schema": 1,
  "group": [m_1, ..., m_n],            orders of the cyclic factors of G
  "h": [[s_11, ..., s_1n], ...],       one row per letter: h_i as exponents over the doubled group Z_{m_1^2} x ...
  "r": [[r_11, ..., r_1n], ...],       chi_i(big generator j) = zeta_{m_j^2}^{r_ij}
  "cartan": [[a_11, ...], ...],        theta x theta Cartan matrix
  "lambda": [{"i": 0, "j": 1, "value": X}, ...],       optional linking parameters
  "mu": [{"root": [1, 0, ...], "value": X}, ...],      optional root vector parameters
  "c": {"c": [c_1, ...], "c2": [{"i":0,"j":1,"value":v}], "c3": [{"r":0,"s":1,"t":2,"value":v}]},   optional
  "budget": 5000,                      optional dimension budget
  "label": "...", "recipe": "...", "recipe_args": {"name": int, ...}   optional
}
A scalar X is an integer or {"conductor": M, "terms": [[e, "p/q"], ...]} meaning sum (p/q) zeta_M^e.
Unknown fields are rejected.)";
}

json cyclo_to_json(const CycloNumber& x) {
  json terms = json::array();
  for (auto& [e, q] : x.terms()) terms.push_back({e, q.get_str()});
  return {{"conductor", x.conductor()}, {"terms", terms}};
}

CycloNumber cyclo_from_json(const json& j) {
  if (j.is_number_integer()) return CycloNumber(j.get<long>());
  only_fields(j, "scalar", {"conductor", "terms"});
  long M = as_long(need(j, "conductor", "scalar"), "scalar.conductor");
  if (M < 1) throw SchemaError("scalar.conductor must be positive");
  const json& t = need(j, "terms", "scalar");
  if (!t.is_array()) throw SchemaError("scalar.terms: expected an array");
  std::vector<std::pair<long, Rational>> terms;
  for (auto& x : t) {
    if (!x.is_array() || x.size() != 2) throw SchemaError("scalar.terms: expected [exponent, \"p/q\"] pairs");
    long e = as_long(x[0], "scalar.terms exponent");
    Rational q;
    try {
      q = x[1].is_number_integer() ? Rational(x[1].get<long>()) : Rational(x[1].get<std::string>());
    } catch (const std::exception&) {
      throw SchemaError("scalar.terms: bad rational");
    }
    q.canonicalize();
    terms.emplace_back(e, q);
  }
  return cyclo_from_terms(M, terms);
}

DatumFile parse_datum(const json& j) {
  only_fields(j, "datum", {"schema", "group", "h", "r", "cartan", "lambda", "mu", "c", "budget", "label", "recipe",
                           "recipe_args"});
  if (as_long(need(j, "schema", "datum"), "schema") != kSchemaVersion)
    throw SchemaError("unsupported schema version");
  std::vector<long> m = as_longs(need(j, "group", "datum"), "group");
  for (long x : m)
    if (x < 1) throw SchemaError("group: orders must be positive");
  AbGroup G(m);
  std::size_t n = m.size();
  const json& hj = need(j, "h", "datum");
  if (!hj.is_array()) throw SchemaError("h: expected an array of rows");
  std::size_t th = hj.size();
  IntMatrix h = as_matrix(hj, "h", th, n);
  IntMatrix r = as_matrix(need(j, "r", "datum"), "r", th, n);
  IntMatrix A = as_matrix(need(j, "cartan", "datum"), "cartan", th, th);
  std::string label = j.contains("label") ? j["label"].get<std::string>() : "";

  DatumFile d;
  std::vector<Elt> hs(h.begin(), h.end());
  d.datum = CartanDatum(G, hs, r, A, label);
  for (auto& e : d.datum.h) e = d.datum.big.reduce(e);

  if (auto it = j.find("lambda"); it != j.end()) {
    if (!it->is_array()) throw SchemaError("lambda: expected an array");
    for (auto& x : *it) {
      only_fields(x, "lambda entry", {"i", "j", "value"});
      long a = as_long(need(x, "i", "lambda entry"), "lambda.i"), b = as_long(need(x, "j", "lambda entry"), "lambda.j");
      if (a < 0 || b < 0 || a >= static_cast<long>(th) || b >= static_cast<long>(th) || a >= b)
        throw SchemaError("lambda: need 0 <= i < j < theta");
      d.lambda[{static_cast<int>(a), static_cast<int>(b)}] = cyclo_from_json(need(x, "value", "lambda entry"));
    }
  }
  if (auto it = j.find("mu"); it != j.end()) {
    if (!it->is_array()) throw SchemaError("mu: expected an array");
    for (auto& x : *it) {
      only_fields(x, "mu entry", {"root", "value"});
      Root a = as_longs(need(x, "root", "mu entry"), "mu.root");
      if (a.size() != th) throw SchemaError("mu.root: expected theta coordinates");
      d.mu[a] = cyclo_from_json(need(x, "value", "mu entry"));
    }
  }
  if (auto it = j.find("c"); it != j.end()) {
    only_fields(*it, "c", {"c", "c2", "c3"});
    CocycleParams c(G);
    c.c = as_longs(need(*it, "c", "c"), "c.c");
    if (auto c2 = it->find("c2"); c2 != it->end())
      for (auto& x : *c2) {
        only_fields(x, "c2 entry", {"i", "j", "value"});
        c.c2[{static_cast<int>(as_long(need(x, "i", "c2"), "c2.i")), static_cast<int>(as_long(need(x, "j", "c2"), "c2.j"))}] =
            as_long(need(x, "value", "c2"), "c2.value");
      }
    if (auto c3 = it->find("c3"); c3 != it->end())
      for (auto& x : *c3) {
        only_fields(x, "c3 entry", {"r", "s", "t", "value"});
        c.c3[{static_cast<int>(as_long(need(x, "r", "c3"), "c3.r")), static_cast<int>(as_long(need(x, "s", "c3"), "c3.s")),
              static_cast<int>(as_long(need(x, "t", "c3"), "c3.t"))}] = as_long(need(x, "value", "c3"), "c3.value");
      }
    c.validate();
    d.c = c;
  }
  if (auto it = j.find("budget"); it != j.end()) {
    d.budget = as_long(*it, "budget");
    if (d.budget < 1) throw SchemaError("budget must be positive");
  }
  if (auto it = j.find("recipe"); it != j.end()) d.recipe = it->get<std::string>();
  if (auto it = j.find("recipe_args"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("recipe_args: expected an object");
    for (auto& [k, v] : it->items()) d.recipe_args[k] = as_long(v, "recipe_args." + k);
  }
  return d;
}

DatumFile read_datum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  } catch (const json::type_error& e) {
    throw SchemaError(e.what());
  }
  try {
    return parse_datum(j);
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  }
}

json to_json(const DatumFile& d) {
  const CartanDatum& D = d.datum;
  json j;
  j["schema"] = kSchemaVersion;
  j["group"] = D.base.orders();
  j["h"] = D.h;
  j["r"] = D.r;
  j["cartan"] = D.A;
  if (!D.label.empty()) j["label"] = D.label;
  if (!d.lambda.empty()) {
    json a = json::array();
    for (auto& [k, v] : d.lambda) a.push_back({{"i", k.first}, {"j", k.second}, {"value", cyclo_to_json(v)}});
    j["lambda"] = a;
  }
  if (!d.mu.empty()) {
    json a = json::array();
    for (auto& [k, v] : d.mu) a.push_back({{"root", k}, {"value", cyclo_to_json(v)}});
    j["mu"] = a;
  }
  if (d.c) {
    json c;
    c["c"] = d.c->c;
    json c2 = json::array(), c3 = json::array();
    for (auto& [k, v] : d.c->c2)
      if (v) c2.push_back({{"i", k.first}, {"j", k.second}, {"value", v}});
    for (auto& [k, v] : d.c->c3)
      if (v) c3.push_back({{"r", std::get<0>(k)}, {"s", std::get<1>(k)}, {"t", std::get<2>(k)}, {"value", v}});
    if (!c2.empty()) c["c2"] = c2;
    if (!c3.empty()) c["c3"] = c3;
    j["c"] = c;
  }
  if (d.budget > 0) j["budget"] = d.budget;
  if (!d.recipe.empty()) j["recipe"] = d.recipe;
  if (!d.recipe_args.empty()) j["recipe_args"] = d.recipe_args;
  return j;
}

DatumFile from_factory(const FactoryOutput& f) {
  DatumFile d;
  d.datum = f.datum;
  d.lambda = f.lambda;
  d.mu = f.mu;
  d.c = f.c;
  d.recipe = f.recipe;
  d.recipe_args = f.args;
  return d;
}

json report_to_json(const Report& r) {
  json checks = json::array();
  for (auto& c : r.checks) {
    json x = {{"name", c.name}, {"ok", c.ok}};
    if (!c.ok && !c.detail.empty()) x["witness"] = c.detail;
    checks.push_back(x);
  }
  json j = {{"ok", r.ok()}, {"checks", checks}};
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

}  // namespace qha
