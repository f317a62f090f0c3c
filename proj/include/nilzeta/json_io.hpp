#pragma once

#include <json.hpp>

#include "nilzeta/exactalg.hpp"

namespace nilzeta {

// Integers that fit a long are emitted as JSON numbers, larger ones as strings.
nlohmann::json bigint_json(const BigInt &c);
BigInt bigint_from_json(const nlohmann::json &j);

// LaurentPoly: [[e_p, e_T, coeff], ...] in canonical order.
// RatFun: {"num": <LaurentPoly>, "den": [[a, b], ...]}.
void to_json(nlohmann::json &j, const LaurentPoly &x);
void from_json(const nlohmann::json &j, LaurentPoly &x);
void to_json(nlohmann::json &j, const RatFun &x);
void from_json(const nlohmann::json &j, RatFun &x);

} // namespace nilzeta
