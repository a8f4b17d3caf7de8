#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhh {

/// Failure categories surfaced by the library. Every thrown qhh::error carries one.
enum class errc {
  not_prime,
  h0_violated,
  h1_required,
  out_of_range,
  shape_mismatch,
  modulus_mismatch,
  context_mismatch,
  not_contained,
  unsafe_degree,
  not_a_complex,
  nilpotency_failure,
  simplicial_identity,
  relation_failure,
  not_exact,
  invalid_resolution,
  no_lift,
  division_failure,
  resource_bound,
  invalid_input,
};

constexpr std::string_view to_string(errc c) noexcept {
  switch (c) {
    case errc::not_prime: return "NotPrime";
    case errc::h0_violated: return "H0Violated";
    case errc::h1_required: return "H1Required";
    case errc::out_of_range: return "OutOfRange";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::modulus_mismatch: return "ModulusMismatch";
    case errc::context_mismatch: return "ContextMismatch";
    case errc::not_contained: return "NotContained";
    case errc::unsafe_degree: return "UnsafeDegree";
    case errc::not_a_complex: return "NotAComplex";
    case errc::nilpotency_failure: return "NilpotencyFailure";
    case errc::simplicial_identity: return "SimplicialIdentity";
    case errc::relation_failure: return "RelationFailure";
    case errc::not_exact: return "NotExact";
    case errc::invalid_resolution: return "InvalidResolution";
    case errc::no_lift: return "NoLift";
    case errc::division_failure: return "DivisionFailure";
    case errc::resource_bound: return "ResourceBound";
    case errc::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace qhh
