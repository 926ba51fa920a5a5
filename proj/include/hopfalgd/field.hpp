#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hopfalgd {

// Bad user input (config files, tables, malformed element strings).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Operation not available in the configured field mode.
class UnsupportedMode : public std::runtime_error {
 public:
  explicit UnsupportedMode(const std::string& what) : std::runtime_error(what) {}
};

class Fq;

// Coefficient field: exact rationals (p == 0) or GF(p) with p an odd-sized
// prime below 2^31. All arithmetic in the toolkit is exact; there is no
// floating point anywhere.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field gf(uint32_t p);
  // "rational" or "gf:<p>"
  static Field parse_spec(const std::string& spec);

  bool rational() const { return p_ == 0; }
  uint32_t prime() const { return p_; }
  std::string spec() const;

  Fq zero() const;
  Fq one() const;
  Fq from_long(long v) const;
  Fq parse(const std::string& s) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  explicit Field(uint32_t p) : p_(p) {}
  uint32_t p_ = 0;
};

// A field element. Rational mode keeps a canonical mpq; GF(p) mode keeps the
// canonical representative in [0, p). A default-constructed element is a
// neutral zero that combines with either mode.
class Fq {
 public:
  Fq() = default;

  static Fq rational(mpq_class v);
  static Fq residue(int64_t r, uint32_t p);

  uint32_t characteristic() const { return p_; }
  bool is_zero() const;
  bool is_one() const;

  Fq operator-() const;
  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator*(const Fq& o) const;
  Fq operator/(const Fq& o) const;
  Fq& operator+=(const Fq& o) { *this = *this + o; return *this; }
  Fq& operator-=(const Fq& o) { *this = *this - o; return *this; }
  Fq& operator*=(const Fq& o) { *this = *this * o; return *this; }
  Fq inv() const;

  bool operator==(const Fq& o) const;
  bool operator!=(const Fq& o) const { return !(*this == o); }

  // "n" / "n/d" in rational mode, the decimal residue in GF(p) mode.
  std::string str() const;

  const mpq_class& rat() const { return q_; }
  uint64_t res() const { return r_; }

 private:
  friend class Field;
  mpq_class q_;
  uint64_t r_ = 0;
  uint32_t p_ = 0;
};

}  // namespace hopfalgd
