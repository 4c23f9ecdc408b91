#pragma once

#include "eismeas/measure.hpp"
#include "eismeas/qexpansion.hpp"

namespace eismeas {

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const CyclotomicNumber& a);
CyclotomicNumber cyclotomic_from_json(const Json& j);
// Rational string when the value is rational, else the {"order", "coords"} object.
Json value_json(const CyclotomicNumber& a);

Json to_json(const ComplexApprox& z);

Json to_json(const DirichletCharacter& chi);
DirichletCharacter character_from_json(const Json& j);

Json to_json(const QExpansion<Rational>& f);
Json to_json(const QExpansion<CyclotomicNumber>& f);
Json to_json(const QExpansion<ComplexApprox>& f);

Json to_json(const DistributionTable<Rational>& t);
Json mu_star_table_json(const DistributionTable<CyclotomicNumber>& t, long k, long mprime);

Json to_json(const MeasureReport& r);

}  // namespace eismeas
