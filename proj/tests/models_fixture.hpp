#pragma once

#include <adok/model/model.hpp>

// Shared test models.
namespace adok::fixtures {

// P^1, O(1), constant weight log 2 at infinity; the pointwise metric with
// scaling vector (2, 2) induces exactly that weight.
inline DiagonalModel flagship_p1() {
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  m.max_family[Place::inf()] = {Rat(2), Rat(2)};
  return m;
}

// P^2, O(1), constant weight log 2 at infinity.
inline DiagonalModel p2_log2() {
  DiagonalModel m;
  m.dim = 2;
  m.degree = 1;
  m.max_family[Place::inf()] = {Rat(2), Rat(2), Rat(2)};
  return m;
}

// P^1, O(1), constant weight log 3 carried at the finite place 3.
inline DiagonalModel p1_log3_at3() {
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  m.max_family[Place::finite(3)] = {Rat(3), Rat(3)};
  return m;
}

// The pointwise family (1/2, 2, 2) on P^2.
inline DiagonalModel max_family_p2() {
  DiagonalModel m;
  m.dim = 2;
  m.degree = 1;
  m.max_family[Place::inf()] = {Rat(1) / 2, Rat(2), Rat(2)};
  return m;
}

// Mixed-sign affine weight on P^1: -log2 at u=0, +2log2 at u=1.
inline DiagonalModel mixed_p1() {
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  m.max_family[Place::inf()] = {Rat(1) / 2, Rat(4)};
  return m;
}

// Mixed-sign affine weight on P^2 with the negative vertex at e0.
inline DiagonalModel mixed_p2() {
  DiagonalModel m;
  m.dim = 2;
  m.degree = 1;
  m.max_family[Place::inf()] = {Rat(1) / 2, Rat(4), Rat(4)};
  return m;
}

// Constant rational weight 1/4 (in nats) on P^2; no pointwise data.
inline DiagonalModel quarter_p2() {
  DiagonalModel m;
  m.dim = 2;
  m.degree = 1;
  m.weights[Place::inf()] = WeightFunction::constant(LogReal(Rat(1) / 4));
  return m;
}

// Concave tent weight on P^1: peak log2 at the midpoint, dipping to
// -log2/2 at both endpoints.
inline DiagonalModel tent_p1() {
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  LogReal l2 = LogReal::log_prime(2);
  AffinePiece rise{{l2 * 3}, l2 * Rat(-1, 2)};
  AffinePiece fall{{l2 * -3}, l2 * Rat(5, 2)};
  m.weights[Place::inf()] = WeightFunction({rise, fall});
  return m;
}

}  // namespace adok::fixtures
