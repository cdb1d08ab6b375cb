#pragma once

#include <nlohmann/json.hpp>

#include "dquant/cohomology.hpp"
#include "dquant/qlab.hpp"

namespace dquant {

using Json = nlohmann::ordered_json;

// Exact values are written as "p/q" strings.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json rationals_json(const std::vector<Rational>& v);

Json root_system_json(const RootSystem& rs);
Json levi_json(const LeviDatum& levi);

// [{indices: [i1 < i2 < ...], coeff: "p/q"}, ...]
Json multivector_json(const Multivector& m);
Multivector multivector_from_json(RootSystemPtr rs, int degree, const Json& j);

// Quasiroot coordinates rendered as "[1,0,2]", used as object keys.
std::string quasiroot_key(const Root& qr);

Json bivector_report_json(const InvariantBivector& f, const OrbitPoint& point, const Rational& K);
Json classification_row_json(const GoodOrbitReport& r);
Json cohomology_report_json(const InvariantComplex& cx);
Json pencil_report_json(const PencilReport& r);
Json re_pbw_report_json(const FlatnessReport& flat, const FirstOrderReport& first);

}  // namespace dquant
