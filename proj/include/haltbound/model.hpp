#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace haltbound {

/// Overhead function for the self-delimiting model: maps an output size n to
/// the extra bits the encoding costs on top of n. Must be total, monotone
/// non-decreasing, and eventually below n (needed so start-index resolution
/// terminates); callers inject it, so those properties are a contract, not
/// something we can verify here.
using OverheadFn = std::function<unsigned(unsigned)>;

/// ceil(log2(n+1)) == bit length of n. The default overhead: the simplest
/// monotone integer realization of a logarithmic encoding cost (g(1) = 1).
inline unsigned default_log_overhead(unsigned n) {
  unsigned bits = 0;
  while (n != 0) {
    ++bits;
    n >>= 1;
  }
  return bits;
}

/// Which complexity measure governs the probability formulas.
///
/// Plain: a string of n bits has complexity at most n + c for a fixed
/// constant c of the chosen language. SelfDelimiting: at most n + g(n) with a
/// logarithmic-order overhead g.
class ComplexityModel {
 public:
  enum class Kind { Plain, SelfDelimiting };

  static ComplexityModel plain(unsigned c) {
    ComplexityModel m;
    m.kind_ = Kind::Plain;
    m.c_ = c;
    m.name_ = "plain,c=" + std::to_string(c);
    return m;
  }

  static ComplexityModel self_delimiting_default() {
    return self_delimiting(default_log_overhead, "default");
  }

  static ComplexityModel self_delimiting(OverheadFn g, std::string g_name) {
    ComplexityModel m;
    m.kind_ = Kind::SelfDelimiting;
    m.g_ = std::move(g);
    m.name_ = "sd,g=" + std::move(g_name);
    return m;
  }

  Kind kind() const { return kind_; }
  bool is_plain() const { return kind_ == Kind::Plain; }

  unsigned c() const {
    if (!is_plain()) throw std::logic_error("c() on a self-delimiting model");
    return c_;
  }

  unsigned g(unsigned n) const {
    if (is_plain()) throw std::logic_error("g() on a plain model");
    return g_(n);
  }

  const OverheadFn& overhead() const {
    if (is_plain()) throw std::logic_error("overhead() on a plain model");
    return g_;
  }

  /// Stable textual identity, e.g. "plain,c=0" or "sd,g=default". Used for
  /// run descriptions and config hashing.
  const std::string& description() const { return name_; }

 private:
  ComplexityModel() = default;

  Kind kind_ = Kind::Plain;
  unsigned c_ = 0;
  OverheadFn g_;
  std::string name_;
};

}  // namespace haltbound
