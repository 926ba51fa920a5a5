#include "hopfalgd/field.hpp"

namespace hopfalgd {

namespace {

bool is_prime_u32(uint32_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint64_t powmod(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t acc = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return acc;
}

}  // namespace

Field Field::gf(uint32_t p) {
  if (p >= (1u << 31) || !is_prime_u32(p))
    throw InputError("field gf:" + std::to_string(p) + " is not a prime below 2^31");
  return Field(p);
}

Field Field::parse_spec(const std::string& spec) {
  if (spec == "rational") return rationals();
  if (spec.rfind("gf:", 0) == 0) {
    uint64_t p = 0;
    try {
      p = std::stoull(spec.substr(3));
    } catch (const std::exception&) {
      throw InputError("bad field spec '" + spec + "'");
    }
    if (p >= (1u << 31)) throw InputError("bad field spec '" + spec + "': prime too large");
    return gf(static_cast<uint32_t>(p));
  }
  throw InputError("bad field spec '" + spec + "' (expected \"rational\" or \"gf:<p>\")");
}

std::string Field::spec() const {
  return p_ == 0 ? "rational" : "gf:" + std::to_string(p_);
}

Fq Field::zero() const {
  Fq f;
  f.p_ = p_;
  return f;
}

Fq Field::one() const { return from_long(1); }

Fq Field::from_long(long v) const {
  if (p_ == 0) return Fq::rational(mpq_class(v));
  return Fq::residue(v, p_);
}

Fq Field::parse(const std::string& s) const {
  if (s.empty()) throw InputError("empty field element");
  if (p_ == 0) {
    auto ok_char = [](char c) { return (c >= '0' && c <= '9') || c == '/' || c == '-' || c == '+'; };
    for (char c : s)
      if (!ok_char(c)) throw InputError("bad rational '" + s + "'");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InputError("bad rational '" + s + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    q.canonicalize();
    return Fq::rational(q);
  }
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw InputError("bad residue '" + s + "'");
    return Fq::residue(v, p_);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("bad residue '" + s + "'");
  }
}

Fq Fq::rational(mpq_class v) {
  Fq f;
  f.q_ = std::move(v);
  f.q_.canonicalize();
  return f;
}

Fq Fq::residue(int64_t r, uint32_t p) {
  Fq f;
  f.p_ = p;
  int64_t m = r % static_cast<int64_t>(p);
  if (m < 0) m += p;
  f.r_ = static_cast<uint64_t>(m);
  return f;
}

bool Fq::is_zero() const { return p_ == 0 ? q_ == 0 : r_ == 0; }
bool Fq::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

namespace {
// Mixed-mode arithmetic is a bug except for the neutral zero, which may meet
// elements of either field.
inline uint32_t joint_char(const Fq& a, const Fq& b) {
  if (a.characteristic() == b.characteristic()) return a.characteristic();
  if (a.is_zero() && a.characteristic() == 0) return b.characteristic();
  if (b.is_zero() && b.characteristic() == 0) return a.characteristic();
  throw std::logic_error("field mode mismatch in arithmetic");
}
}  // namespace

Fq Fq::operator-() const {
  if (p_ == 0) return rational(mpq_class(-q_));
  return residue(-static_cast<int64_t>(r_), p_);
}

Fq Fq::operator+(const Fq& o) const {
  uint32_t p = joint_char(*this, o);
  if (p == 0) return rational(mpq_class(q_ + o.q_));
  return residue(static_cast<int64_t>((r_ + o.r_) % p), p);
}

Fq Fq::operator-(const Fq& o) const {
  uint32_t p = joint_char(*this, o);
  if (p == 0) return rational(mpq_class(q_ - o.q_));
  return residue(static_cast<int64_t>((r_ + p - o.r_) % p), p);
}

Fq Fq::operator*(const Fq& o) const {
  uint32_t p = joint_char(*this, o);
  if (p == 0) return rational(mpq_class(q_ * o.q_));
  return residue(static_cast<int64_t>(r_ * o.r_ % p), p);
}

Fq Fq::inv() const {
  if (is_zero()) throw std::logic_error("inverse of zero");
  if (p_ == 0) return rational(mpq_class(1 / q_));
  return residue(static_cast<int64_t>(powmod(r_, p_ - 2, p_)), p_);
}

Fq Fq::operator/(const Fq& o) const { return *this * o.inv(); }

bool Fq::operator==(const Fq& o) const {
  if (p_ != o.p_) return is_zero() && o.is_zero() && (p_ == 0 || o.p_ == 0);
  return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

std::string Fq::str() const {
  if (p_ == 0) return q_.get_str();
  return std::to_string(r_);
}

}  // namespace hopfalgd
