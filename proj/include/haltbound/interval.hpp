#pragma once

#include <stdexcept>
#include <string>

#include "haltbound/rational.hpp"

namespace haltbound {

/// Unconstrained closed interval of exact rationals, lo <= hi.
struct RationalInterval {
  ExactRational lo;
  ExactRational hi;

  RationalInterval(ExactRational l, ExactRational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::logic_error("interval endpoints out of order");
  }

  ExactRational width() const { return hi - lo; }
  bool contains(const ExactRational& v) const { return lo <= v && v <= hi; }
  bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  std::string to_string() const { return "lo = " + lo.to_string() + ", hi = " + hi.to_string(); }
};

/// Rigorous enclosure of a probability: 0 <= lo <= hi <= 1, and every
/// producing operation guarantees the mathematically exact value lies inside.
/// Endpoints outside [0,1] mean a broken derivation, never a value to clamp,
/// so construction refuses them outright.
struct ProbInterval {
  ExactRational lo;
  ExactRational hi;

  ProbInterval(ExactRational l, ExactRational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.sign() < 0 || hi > ExactRational(1) || lo > hi)
      throw std::logic_error("probability enclosure violates 0 <= lo <= hi <= 1: lo = " +
                             lo.to_string() + ", hi = " + hi.to_string());
  }

  ExactRational width() const { return hi - lo; }
  bool contains(const ExactRational& v) const { return lo <= v && v <= hi; }
  bool contains(const ProbInterval& o) const { return lo <= o.lo && o.hi <= hi; }

  /// Exact endpoint-wise complement: 1 - [lo, hi] = [1 - hi, 1 - lo].
  ProbInterval complement() const {
    return ProbInterval(ExactRational(1) - hi, ExactRational(1) - lo);
  }

  std::string to_string() const { return "lo = " + lo.to_string() + ", hi = " + hi.to_string(); }
};

}  // namespace haltbound
