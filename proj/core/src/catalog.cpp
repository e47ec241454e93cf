#include "ctp/catalog.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>
#include <utility>

namespace ctp {
namespace {

constexpr std::pair<EquationId, std::string_view> kNames[] = {
    {EquationId::Eq1_1, "1.1"},   {EquationId::Eq1_2, "1.2"},
    {EquationId::Eq1_3, "1.3"},   {EquationId::Eq1_4, "1.4"},
    {EquationId::Eq1_5, "1.5"},   {EquationId::Eq1_6, "1.6"},
    {EquationId::Eq1_7, "1.7"},   {EquationId::Eq1_8, "1.8"},
    {EquationId::Eq1_9, "1.9"},   {EquationId::Eq1_10, "1.10"},
    {EquationId::Eq1_11, "1.11"}, {EquationId::Eq1_12, "1.12"},
    {EquationId::Eq1_13, "1.13"}, {EquationId::Eq1_14a, "1.14a"},
    {EquationId::Eq1_14b, "1.14b"}, {EquationId::Eq1_15, "1.15"},
    {EquationId::Eq1_16, "1.16"}, {EquationId::Eq1_17, "1.17"},
    {EquationId::Eq1_18, "1.18"}, {EquationId::Eq1_19, "1.19"},
    {EquationId::Eq1_20, "1.20"}, {EquationId::Eq1_21, "1.21"},
    {EquationId::Eq1_22, "1.22"}, {EquationId::Eq1_23, "1.23"},
    {EquationId::Eq1_24, "1.24"}, {EquationId::Eq1_25, "1.25"},
    {EquationId::Eq1_26, "1.26"}, {EquationId::Eq1_27, "1.27"},
    {EquationId::Eq1_29, "1.29"}, {EquationId::Eq1_30, "1.30"},
    {EquationId::Eq1_31, "1.31"}, {EquationId::Eq1_32, "1.32"},
    {EquationId::Eq1_33, "1.33"}, {EquationId::Eq1_34, "1.34"},
    {EquationId::Eq1_35, "1.35"}, {EquationId::Eq1_36, "1.36"},
    {EquationId::Eq1_37, "1.37"}, {EquationId::Eq1_38, "1.38"},
    {EquationId::Eq1_39, "1.39"}, {EquationId::Eq1_40, "1.40"},
    {EquationId::Eq1_41, "1.41"}, {EquationId::Eq1_42, "1.42"},
    {EquationId::Eq1_43, "1.43"}, {EquationId::Eq1_44, "1.44"},
    {EquationId::Eq1_45, "1.45"}, {EquationId::Eq1_46, "1.46"},
    {EquationId::Eq2_5, "2.5"},   {EquationId::Eq2_22, "2.22"},
    {EquationId::Eq2_38, "2.38"}, {EquationId::Eq3_1, "3.1"},
    {EquationId::Eq3_5, "3.5"},   {EquationId::Eq3_7, "3.7"},
    {EquationId::Eq3_13, "3.13"}, {EquationId::Eq3_18, "3.18"},
    {EquationId::Eq3_31, "3.31"}, {EquationId::Eq3_44, "3.44"},
    {EquationId::Eq3_45, "3.45"}, {EquationId::Eq3_46, "3.46"},
    {EquationId::Eq3_49, "3.49"},
};

}  // namespace

std::string_view to_string(EquationId id) {
  for (const auto& [eq, name] : kNames) {
    if (eq == id) return name;
  }
  return "?";
}

EquationId parse_equation_id(std::string_view label) {
  // Aliases from the derivation route.
  if (label == "2.17") return EquationId::Eq1_1;
  if (label == "2.26") return EquationId::Eq1_35;
  if (label == "2.45") return EquationId::Eq1_38;
  for (const auto& [eq, name] : kNames) {
    if (name == label) return eq;
  }
  throw DomainError("unknown equation id: " + std::string(label));
}

bool is_pde(EquationId id) {
  switch (id) {
    case EquationId::Eq1_35:
    case EquationId::Eq1_36:
    case EquationId::Eq1_37:
    case EquationId::Eq1_38:
    case EquationId::Eq1_39:
    case EquationId::Eq1_40:
    case EquationId::Eq1_41:
    case EquationId::Eq1_42:
    case EquationId::Eq1_43:
    case EquationId::Eq1_44:
    case EquationId::Eq1_45:
    case EquationId::Eq1_46:
    case EquationId::Eq2_22:
    case EquationId::Eq2_38:
    case EquationId::Eq3_46:
    case EquationId::Eq3_49:
      return true;
    default:
      return false;
  }
}

bool is_real_avatar(EquationId id) {
  switch (id) {
    case EquationId::Eq1_2:
    case EquationId::Eq1_3:
    case EquationId::Eq1_4:
    case EquationId::Eq1_9:
    case EquationId::Eq1_10:
    case EquationId::Eq1_11:
    case EquationId::Eq1_12:
    case EquationId::Eq1_16:
    case EquationId::Eq1_17:
    case EquationId::Eq1_18:
    case EquationId::Eq1_19:
    case EquationId::Eq1_27:
    case EquationId::Eq1_33:
    case EquationId::Eq1_34:
    case EquationId::Eq1_36:
    case EquationId::Eq1_37:
    case EquationId::Eq1_39:
    case EquationId::Eq1_42:
    case EquationId::Eq1_44:
    case EquationId::Eq1_46:
      return true;
    default:
      return false;
  }
}

void EquationSpec::validate() const {
  if (omega_cap == 0.0 || !std::isfinite(omega_cap)) {
    throw DomainError("Omega must be real, finite and nonvanishing");
  }
  auto check_pq = [&](int pp, int qq) {
    if (qq <= 0) throw DomainError("q must be a positive integer");
    if (pp != 0 && std::gcd(std::abs(pp), qq) != 1) {
      throw DomainError("p and q must be coprime");
    }
  };
  switch (id) {
    case EquationId::Eq1_1:
    case EquationId::Eq2_5:
      check_pq(p, q);
      if (p == q) throw DomainError("p = q gives the excluded linear case");
      break;
    case EquationId::Eq1_2:
      if (q != 1) throw DomainError("real avatar 1.2 requires q = 1");
      if (p <= 1) throw DomainError("1.2 requires integer p > 1");
      break;
    case EquationId::Eq1_3:
      if (p != 2 || q != 1) throw DomainError("1.3 is fixed at p = 2, q = 1");
      break;
    case EquationId::Eq1_4:
      if (alpha.imag() != 0.0) {
        throw DomainError("oscillator constant a must be real");
      }
      break;
    case EquationId::Eq1_20:
    case EquationId::Eq3_18:
      check_pq(p1, q1);
      check_pq(p2, q2);
      if (p2 == 2 * q2) {
        throw DomainError("p2/q2 = 2 degenerates the two-exponent family");
      }
      break;
    case EquationId::Eq1_22:
      if (n < 1) throw DomainError("1.22 requires positive n");
      if (m < 0) throw DomainError("1.22 requires nonnegative m");
      break;
    case EquationId::Eq1_23:
      if (n < 1 || m < 1) throw DomainError("1.23 requires positive n and m");
      break;
    case EquationId::Eq1_35:
    case EquationId::Eq2_22:
      check_pq(p, q);
      if (p == 0) throw DomainError("shock equation requires p != 0");
      break;
    case EquationId::Eq1_36:
      if (p != 1 || q != 1) throw DomainError("1.36 is fixed at p = q = 1");
      break;
    case EquationId::Eq1_37:
      if (p != 2 || q != 1) throw DomainError("1.37 is fixed at p = 2, q = 1");
      break;
    case EquationId::Eq1_40:
    case EquationId::Eq3_46:
      check_pq(p, q);
      break;
    default:
      break;
  }
}

}  // namespace ctp
