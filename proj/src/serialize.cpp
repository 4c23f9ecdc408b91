#include "eismeas/serialize.hpp"

namespace eismeas {

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw InvalidArgument("rational_from_json: expected a string");
  return parse_rational(j.get<std::string>());
}

Json to_json(const CyclotomicNumber& a) {
  Json coords = Json::array();
  for (const auto& c : a.coords()) coords.push_back(to_string(c));
  return Json{{"order", a.order()}, {"coords", coords}};
}

CyclotomicNumber cyclotomic_from_json(const Json& j) {
  std::vector<Rational> coords;
  for (const auto& c : j.at("coords")) coords.push_back(rational_from_json(c));
  return CyclotomicNumber(j.at("order").get<unsigned>(), std::move(coords));
}

Json value_json(const CyclotomicNumber& a) {
  if (a.is_rational()) return to_string(a.rational_part());
  return to_json(a);
}

Json to_json(const ComplexApprox& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const DirichletCharacter& chi) {
  return Json{{"p", chi.p()}, {"m", chi.m()}, {"generator", chi.generator()}, {"index", chi.index()}};
}

DirichletCharacter character_from_json(const Json& j) {
  const long p = j.at("p").get<long>(), m = j.at("m").get<long>();
  auto group = CharacterGroup::get(p, m);
  if (j.contains("generator") && j.at("generator").get<long>() != group->generator)
    throw InvalidArgument("character_from_json: generator differs from the canonical primitive root");
  return DirichletCharacter(group, j.at("index").get<long>());
}

namespace {

template <class S, class F>
Json qexpansion_json(const QExpansion<S>& f, const char* scalar, F&& convert) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(convert(c));
  return Json{{"precision", f.precision()}, {"scalar", scalar}, {"coeffs", coeffs}};
}

}  // namespace

Json to_json(const QExpansion<Rational>& f) {
  return qexpansion_json(f, "rational", [](const Rational& r) { return to_json(r); });
}

Json to_json(const QExpansion<CyclotomicNumber>& f) {
  return qexpansion_json(f, "cyclotomic", [](const CyclotomicNumber& a) { return to_json(a); });
}

Json to_json(const QExpansion<ComplexApprox>& f) {
  return qexpansion_json(f, "complex", [](const ComplexApprox& z) { return to_json(z); });
}

Json to_json(const DistributionTable<Rational>& t) {
  Json entries = Json::array();
  for (const auto& [a, v] : t.values) entries.push_back(Json{{"residue", a}, {"value", to_json(v)}});
  return Json{{"p", t.p}, {"m", t.m}, {"entries", entries}};
}

Json mu_star_table_json(const DistributionTable<CyclotomicNumber>& t, long k, long mprime) {
  Json entries = Json::array();
  for (const auto& [a, v] : t.values) entries.push_back(Json{{"residue", a}, {"value", to_json(v)}});
  return Json{{"p", t.p}, {"m", t.m}, {"k", k}, {"mprime", mprime}, {"entries", entries}};
}

Json to_json(const MeasureReport& r) {
  Json out{{"claim", r.claim},
           {"inputs", r.inputs},
           {"left", r.left},
           {"right", r.right},
           {"equal", r.equal},
           {"valuation_gap", r.valuation_gap ? Json(*r.valuation_gap) : Json(nullptr)},
           {"holds", r.holds},
           {"exact", r.exact},
           {"applicable", r.applicable}};
  if (r.ratio) out["ratio"] = *r.ratio;
  if (r.tolerance) out["tolerance"] = *r.tolerance;
  if (!r.details.empty()) out["details"] = r.details;
  return out;
}

}  // namespace eismeas
