#include "sflab/dioph.hpp"

#include "sflab/arith.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace sflab {

namespace {

i64 floor_div_i64(i64 a, i64 b) {
  i64 q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// ---- minimal big unsigned, little-endian 64-bit limbs ----
struct BigU {
  std::vector<u64> w;

  BigU() = default;
  explicit BigU(u64 v) {
    if (v) w.push_back(v);
  }
  bool zero() const { return w.empty(); }
  void trim() {
    while (!w.empty() && w.back() == 0) w.pop_back();
  }
  int bit_length() const {
    if (w.empty()) return 0;
    int top = 63;
    while (!((w.back() >> top) & 1)) --top;
    return static_cast<int>(64 * (w.size() - 1)) + top + 1;
  }
  bool bit(int i) const {
    size_t limb = static_cast<size_t>(i) / 64;
    return limb < w.size() && ((w[limb] >> (i % 64)) & 1);
  }
  void set_bit(int i) {
    size_t limb = static_cast<size_t>(i) / 64;
    if (w.size() <= limb) w.resize(limb + 1, 0);
    w[limb] |= u64(1) << (i % 64);
  }
  static int cmp(const BigU& a, const BigU& b) {
    if (a.w.size() != b.w.size()) return a.w.size() < b.w.size() ? -1 : 1;
    for (size_t i = a.w.size(); i-- > 0;)
      if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
    return 0;
  }
  void add(const BigU& o) {
    if (o.w.size() > w.size()) w.resize(o.w.size(), 0);
    u128 carry = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      u128 cur = static_cast<u128>(w[i]) + (i < o.w.size() ? o.w[i] : 0) + carry;
      w[i] = static_cast<u64>(cur);
      carry = cur >> 64;
    }
    if (carry) w.push_back(static_cast<u64>(carry));
  }
  void sub(const BigU& o) {  // pre: *this >= o
    u64 borrow = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      u128 need = static_cast<u128>(i < o.w.size() ? o.w[i] : 0) + borrow;
      if (static_cast<u128>(w[i]) >= need) {
        w[i] = static_cast<u64>(w[i] - need);
        borrow = 0;
      } else {
        w[i] = static_cast<u64>((static_cast<u128>(1) << 64) + w[i] - need);
        borrow = 1;
      }
    }
    trim();
  }
  void shl(unsigned k) {
    if (zero() || k == 0) return;
    unsigned limbs = k / 64, bits = k % 64;
    size_t n = w.size();
    w.resize(n + limbs + 1, 0);
    for (size_t i = n; i-- > 0;) {
      u64 v = w[i];
      w[i] = 0;
      w[i + limbs] |= bits ? (v << bits) : v;
      if (bits) w[i + limbs + 1] |= v >> (64 - bits);
    }
    trim();
  }
  void shr(unsigned k) {
    unsigned limbs = k / 64, bits = k % 64;
    if (limbs >= w.size()) {
      w.clear();
      return;
    }
    w.erase(w.begin(), w.begin() + limbs);
    if (bits) {
      for (size_t i = 0; i < w.size(); ++i) {
        w[i] >>= bits;
        if (i + 1 < w.size()) w[i] |= w[i + 1] << (64 - bits);
      }
    }
    trim();
  }
  BigU mul(const BigU& o) const {
    BigU r;
    if (zero() || o.zero()) return r;
    r.w.assign(w.size() + o.w.size(), 0);
    for (size_t i = 0; i < w.size(); ++i) {
      u128 carry = 0;
      for (size_t j = 0; j < o.w.size(); ++j) {
        u128 cur = static_cast<u128>(w[i]) * o.w[j] + r.w[i + j] + carry;
        r.w[i + j] = static_cast<u64>(cur);
        carry = cur >> 64;
      }
      size_t k = i + o.w.size();
      while (carry) {
        u128 cur = static_cast<u128>(r.w[k]) + carry;
        r.w[k] = static_cast<u64>(cur);
        carry = cur >> 64;
        ++k;
      }
    }
    r.trim();
    return r;
  }
  void mul_u64(u64 m) {
    if (m == 0 || zero()) {
      w.clear();
      return;
    }
    u128 carry = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      u128 cur = static_cast<u128>(w[i]) * m + carry;
      w[i] = static_cast<u64>(cur);
      carry = cur >> 64;
    }
    if (carry) w.push_back(static_cast<u64>(carry));
  }
  u64 divmod_u64(u64 d) {  // in-place quotient, returns remainder
    u128 rem = 0;
    for (size_t i = w.size(); i-- > 0;) {
      u128 cur = (rem << 64) | w[i];
      w[i] = static_cast<u64>(cur / d);
      rem = cur % d;
    }
    trim();
    return static_cast<u64>(rem);
  }
  // binary long division
  static BigU divmod(BigU num, const BigU& den, BigU& rem) {
    BigU q;
    if (den.zero()) throw std::invalid_argument("BigU: division by zero");
    int shift = num.bit_length() - den.bit_length();
    if (shift < 0) {
      rem = std::move(num);
      return q;
    }
    BigU d = den;
    d.shl(static_cast<unsigned>(shift));
    for (int s = shift; s >= 0; --s) {
      if (cmp(num, d) >= 0) {
        num.sub(d);
        q.set_bit(s);
      }
      d.shr(1);
    }
    rem = std::move(num);
    return q;
  }
};

BigU isqrt_big(const BigU& n) {
  BigU r;
  for (int b = (n.bit_length() + 1) / 2; b >= 0; --b) {
    BigU t = r;
    t.set_bit(b);
    if (BigU::cmp(t.mul(t), n) <= 0) r = t;
  }
  return r;
}

int check_bits(int bits) {
  if (bits != 128 && bits != 192 && bits != 256)
    throw std::invalid_argument("precision bits must be 128, 192 or 256");
  return bits;
}

// pack the top `bits` fractional bits of value/2^src_bits into a Frac
Frac pack_frac(const BigU& value, int src_bits, int bits) {
  Frac f(bits);
  int nl = bits / 64;
  int src_limbs = src_bits / 64;
  for (int i = 0; i < nl; ++i) {
    int src_index = src_limbs - 1 - i;  // most significant first
    f.set_limb(i, src_index >= 0 && static_cast<size_t>(src_index) < value.w.size()
                      ? value.w[src_index]
                      : 0);
  }
  return f;
}

} // namespace

// ---- Frac ----

Frac::Frac(int bits) : nlimbs_(check_bits(bits) / 64) {}

Frac Frac::from_rational(i64 num, u64 den, int bits) {
  if (den == 0) throw std::invalid_argument("Frac: zero denominator");
  if (den > (u64(1) << 62)) throw budget_error("Frac: denominator exceeds budget");
  Frac f(bits);
  i64 m = num % static_cast<i64>(den);
  u64 r = m < 0 ? static_cast<u64>(m + static_cast<i64>(den)) : static_cast<u64>(m);
  for (int i = 0; i < f.nlimbs_; ++i) {
    u128 cur = static_cast<u128>(r) << 64;
    f.l_[i] = static_cast<u64>(cur / den);
    r = static_cast<u64>(cur % den);
  }
  return f;
}

void Frac::mul_u64(u64 m) {
  u128 carry = 0;
  for (int i = nlimbs_ - 1; i >= 0; --i) {
    u128 cur = static_cast<u128>(l_[i]) * m + carry;
    l_[i] = static_cast<u64>(cur);
    carry = cur >> 64;  // integer part exits at the top; dropped mod 1
  }
}

void Frac::add(const Frac& o) {
  u128 carry = 0;
  for (int i = nlimbs_ - 1; i >= 0; --i) {
    u128 cur = static_cast<u128>(l_[i]) + o.l_[i] + carry;
    l_[i] = static_cast<u64>(cur);
    carry = cur >> 64;
  }
}

void Frac::negate() {
  bool all_zero = true;
  for (int i = 0; i < nlimbs_; ++i)
    if (l_[i]) all_zero = false;
  if (all_zero) return;
  u128 carry = 1;
  for (int i = nlimbs_ - 1; i >= 0; --i) {
    u128 cur = static_cast<u128>(~l_[i]) + carry;
    l_[i] = static_cast<u64>(cur);
    carry = cur >> 64;
  }
}

double Frac::to_double() const {
  double v = 0.0;
  for (int i = nlimbs_ - 1; i >= 0; --i)
    v = v / 18446744073709551616.0 + static_cast<double>(l_[i]);
  return v / 18446744073709551616.0;
}

double Frac::dist_to_nearest() const {
  if (l_[0] >> 63) {
    Frac d = *this;
    d.negate();
    return d.to_double();
  }
  return to_double();
}

bool Frac::dist_less_than(double threshold) const {
  if (!(threshold > 0.0)) return false;
  if (threshold > 0.5) return true;  // distance never exceeds 1/2
  Frac d = *this;
  if (l_[0] >> 63) d.negate();
  BigU dist;
  dist.w.assign(static_cast<size_t>(nlimbs_), 0);
  for (int i = 0; i < nlimbs_; ++i) dist.w[nlimbs_ - 1 - i] = d.l_[i];
  dist.trim();
  // threshold = m * 2^(e-53) exactly (dyadic double)
  int e = 0;
  double f = std::frexp(threshold, &e);
  u64 m = static_cast<u64>(std::ldexp(f, 53));
  int s = e - 53 + bits();
  if (s >= 0) {
    BigU t(m);
    t.shl(static_cast<unsigned>(s));
    return BigU::cmp(dist, t) < 0;
  }
  BigU lhs = dist;
  lhs.shl(static_cast<unsigned>(-s));
  return BigU::cmp(lhs, BigU(m)) < 0;
}

// ---- rational parsing ----

Rat64 parse_rat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    i64 n = std::stoll(text.substr(0, slash));
    i64 d = std::stoll(text.substr(slash + 1));
    if (d <= 0) throw std::invalid_argument("denominator must be positive");
    return {n, static_cast<u64>(d)};
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return {std::stoll(text), 1};
  bool neg = text[0] == '-';
  std::string digits = text;
  digits.erase(dot, 1);
  if (neg) digits.erase(0, 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad decimal: " + text);
  size_t frac_digits = text.size() - dot - 1;
  if (frac_digits > 18) throw std::invalid_argument("decimal too long: " + text);
  i64 num = std::stoll(digits);
  u64 den = 1;
  for (size_t i = 0; i < frac_digits; ++i) den *= 10;
  return {neg ? -num : num, den};
}

// ---- continued-fraction digit streams ----

namespace {

struct ListStream final : CFStream {
  std::vector<i64> digits;
  size_t pos = 0;
  std::optional<i64> next() override {
    if (pos >= digits.size()) return std::nullopt;
    return digits[pos++];
  }
};

struct RatStream final : CFStream {
  i64 num, den;
  RatStream(i64 n, u64 d) : num(n), den(static_cast<i64>(d)) {}
  std::optional<i64> next() override {
    if (den == 0) return std::nullopt;
    i64 a = floor_div_i64(num, den);
    i64 r = num - a * den;
    num = den;
    den = r;
    return a;
  }
};

// PQa expansion of (P + sqrt(d))/Q
struct SurdStream final : CFStream {
  i64 P, Q;
  u64 d, sq;
  SurdStream(i64 p, i64 q, u64 dd) {
    if (q == 0) throw std::invalid_argument("surd: q must be nonzero");
    i64 absq = q < 0 ? -q : q;
    i128 rem = static_cast<i128>(dd) - static_cast<i128>(p) * p;
    if (rem % q != 0) {
      // rescale so that Q | d - P^2
      if (dd > (u64(1) << 40) || static_cast<u64>(absq) > (u64(1) << 20))
        throw budget_error("surd: rescaled radicand exceeds budget");
      p *= absq;
      dd *= static_cast<u64>(absq) * static_cast<u64>(absq);
      q *= absq;
    }
    P = p;
    Q = q;
    d = dd;
    sq = isqrt_u64(d);
    if (sq * sq == d) throw std::invalid_argument("surd: d must be non-square");
  }
  std::optional<i64> next() override {
    i64 num = P + static_cast<i64>(sq) + (Q < 0 ? 1 : 0);
    i64 a = floor_div_i64(num, Q);
    i128 p1 = static_cast<i128>(a) * Q - P;
    i128 q1 = (static_cast<i128>(d) - p1 * p1) / Q;
    if (p1 > INT64_MAX || p1 < INT64_MIN || q1 > INT64_MAX || q1 < INT64_MIN)
      throw budget_error("surd: coefficients exceed 64 bits");
    P = static_cast<i64>(p1);
    Q = static_cast<i64>(q1);
    return a;
  }
};

// Euclid on the stored bit string; stops once further digits are no longer
// certified by the available precision (q_k^2 must stay well below 2^bits).
struct BitsStream final : CFStream {
  BigU num, den;
  u128 q1 = 0, q2 = 1;  // q_{k-1}, q_{k-2}
  int data_bits;
  BitsStream(const std::vector<u64>& limbs, int bits) : data_bits(bits) {
    num.w.assign(limbs.rbegin(), limbs.rend());
    num.trim();
    den.set_bit(bits);
  }
  std::optional<i64> next() override {
    if (den.zero()) return std::nullopt;
    BigU rem;
    BigU a = BigU::divmod(num, den, rem);
    if (a.w.size() > 1) return std::nullopt;
    u64 av = a.w.empty() ? 0 : a.w[0];
    if (av > static_cast<u64>(INT64_MAX)) return std::nullopt;
    u128 q = static_cast<u128>(av) * q1 + q2;
    if (q > (static_cast<u128>(1) << ((data_bits - 16) / 2))) return std::nullopt;
    q2 = q1;
    q1 = q;
    num = den;
    den = rem;
    return static_cast<i64>(av);
  }
};

} // namespace

// ---- IrrationalSpec ----

IrrationalSpec IrrationalSpec::sqrt_of(u64 d) { return surd(0, 1, d); }

IrrationalSpec IrrationalSpec::surd(i64 p, i64 q, u64 d) {
  if (q == 0) throw std::invalid_argument("surd: q must be nonzero");
  if (d == 0) throw std::invalid_argument("surd: d must be positive");
  u64 r = isqrt_u64(d);
  if (r * r == d) throw std::invalid_argument("surd: d must be non-square");
  IrrationalSpec s;
  s.kind_ = Kind::surd;
  s.p_ = p;
  s.q_ = q;
  s.d_ = d;
  return s;
}

IrrationalSpec IrrationalSpec::from_cf(std::vector<i64> digits) {
  if (digits.empty()) throw std::invalid_argument("cf: need at least one digit");
  if (digits[0] < 0) throw std::invalid_argument("cf: leading digit must be >= 0");
  for (size_t i = 1; i < digits.size(); ++i)
    if (digits[i] < 1)
      throw std::invalid_argument("cf: partial quotients must be >= 1");
  IrrationalSpec s;
  s.kind_ = Kind::cf;
  s.cf_ = std::move(digits);
  return s;
}

IrrationalSpec IrrationalSpec::from_bits_hex(const std::string& hex) {
  if (hex.empty() || hex.size() > 64)
    throw std::invalid_argument("bits: need 1..64 hex digits");
  IrrationalSpec s;
  s.kind_ = Kind::bits;
  s.bit_limbs_.assign(4, 0);
  for (size_t i = 0; i < hex.size(); ++i) {
    char c = hex[i];
    u64 v;
    if (c >= '0' && c <= '9')
      v = static_cast<u64>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<u64>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      v = static_cast<u64>(c - 'A' + 10);
    else
      throw std::invalid_argument("bits: bad hex digit");
    s.bit_limbs_[i / 16] |= v << (60 - 4 * (i % 16));
  }
  return s;
}

IrrationalSpec IrrationalSpec::rational(i64 num, u64 den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den > (u64(1) << 62)) throw budget_error("rational: denominator exceeds budget");
  IrrationalSpec s;
  s.kind_ = Kind::rational;
  s.rnum_ = num;
  s.rden_ = den;
  return s;
}

IrrationalSpec IrrationalSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("alpha spec needs a prefix, e.g. sqrt:2");
  std::string head = text.substr(0, colon);
  std::string tail = text.substr(colon + 1);
  auto split = [&](const std::string& t) {
    std::vector<i64> vals;
    size_t pos = 0;
    while (pos <= t.size()) {
      auto comma = t.find(',', pos);
      std::string tok =
          t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.empty()) throw std::invalid_argument("bad list in alpha spec");
      vals.push_back(std::stoll(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return vals;
  };
  if (head == "sqrt") {
    i64 d = std::stoll(tail);
    if (d <= 0) throw std::invalid_argument("sqrt: d must be positive");
    return sqrt_of(static_cast<u64>(d));
  }
  if (head == "surd") {
    auto v = split(tail);
    if (v.size() != 3) throw std::invalid_argument("surd: need p,q,D");
    if (v[2] <= 0) throw std::invalid_argument("surd: D must be positive");
    return surd(v[0], v[1], static_cast<u64>(v[2]));
  }
  if (head == "cf") return from_cf(split(tail));
  if (head == "bits") return from_bits_hex(tail);
  throw std::invalid_argument("unknown alpha spec: " + head);
}

bool IrrationalSpec::exact_rational() const {
  return kind_ == Kind::rational || kind_ == Kind::cf;
}

Rat64 IrrationalSpec::as_rational() const {
  if (kind_ == Kind::rational) return {rnum_, rden_};
  if (kind_ == Kind::cf) {
    i64 h = cf_[0], h_prev = 1;
    i64 q = 1, q_prev = 0;
    for (size_t i = 1; i < cf_.size(); ++i) {
      i128 hn = static_cast<i128>(cf_[i]) * h + h_prev;
      i128 qn = static_cast<i128>(cf_[i]) * q + q_prev;
      if (hn > INT64_MAX || hn < INT64_MIN || qn > INT64_MAX)
        throw budget_error("cf value exceeds 64 bits");
      h_prev = h;
      q_prev = q;
      h = static_cast<i64>(hn);
      q = static_cast<i64>(qn);
    }
    return {h, static_cast<u64>(q)};
  }
  throw std::invalid_argument("alpha is not an exact rational");
}

Frac IrrationalSpec::frac_bits(int bits) const {
  check_bits(bits);
  switch (kind_) {
    case Kind::rational: {
      return Frac::from_rational(rnum_, rden_, bits);
    }
    case Kind::cf: {
      Rat64 r = as_rational();
      return Frac::from_rational(r.num, r.den, bits);
    }
    case Kind::bits: {
      Frac f(bits);
      for (int i = 0; i < bits / 64; ++i) f.set_limb(i, bit_limbs_[i]);
      return f;
    }
    case Kind::surd: {
      const int guard = 64;
      const int G = bits + guard;
      BigU rad(d_);
      rad.shl(static_cast<unsigned>(2 * G));
      BigU s = isqrt_big(rad);  // floor(sqrt(d) * 2^G)
      // numerator p * 2^G + sqrt(d) * 2^G, tracked as sign + magnitude
      bool neg = false;
      BigU numm;
      if (p_ >= 0) {
        numm = BigU(static_cast<u64>(p_));
        numm.shl(static_cast<unsigned>(G));
        numm.add(s);
      } else {
        BigU a(static_cast<u64>(-p_));
        a.shl(static_cast<unsigned>(G));
        if (BigU::cmp(s, a) >= 0) {
          numm = s;
          numm.sub(a);
        } else {
          numm = a;
          numm.sub(s);
          neg = true;
        }
      }
      u64 absq = static_cast<u64>(q_ < 0 ? -q_ : q_);
      if (q_ < 0) neg = !neg;
      // floor division of the signed numerator by |q|
      u64 rem = numm.divmod_u64(absq);
      if (neg && rem != 0) numm.add(BigU(1));
      // fractional bits of the (possibly negative) value, mod 2^G
      BigU frac_part;
      if (!neg) {
        frac_part = numm;
      } else {
        BigU two_g;
        two_g.set_bit(G);
        BigU low = numm;
        // reduce numm mod 2^G first
        low.w.resize(std::min(low.w.size(), static_cast<size_t>(G / 64)), 0);
        low.trim();
        if (low.zero())
          frac_part = low;
        else {
          frac_part = two_g;
          frac_part.sub(low);
        }
      }
      frac_part.w.resize(static_cast<size_t>(G / 64), 0);  // keep low G bits
      return pack_frac(frac_part, G, bits);
    }
  }
  throw std::logic_error("unreachable");
}

std::unique_ptr<CFStream> IrrationalSpec::digits() const {
  switch (kind_) {
    case Kind::surd:
      return std::make_unique<SurdStream>(p_, q_, d_);
    case Kind::cf: {
      auto s = std::make_unique<ListStream>();
      s->digits = cf_;
      return s;
    }
    case Kind::rational:
      return std::make_unique<RatStream>(rnum_, rden_);
    case Kind::bits:
      return std::make_unique<BitsStream>(bit_limbs_, 256);
  }
  throw std::logic_error("unreachable");
}

std::string IrrationalSpec::describe() const {
  switch (kind_) {
    case Kind::surd:
      if (p_ == 0 && q_ == 1) return "sqrt:" + std::to_string(d_);
      return "surd:" + std::to_string(p_) + "," + std::to_string(q_) + "," +
             std::to_string(d_);
    case Kind::cf:
      return "cf";
    case Kind::bits:
      return "bits";
    case Kind::rational:
      return std::to_string(rnum_) + "/" + std::to_string(rden_);
  }
  return "?";
}

// ---- convergents ----

std::vector<Convergent> convergents(const IrrationalSpec& alpha, int n) {
  if (n < 1) throw std::invalid_argument("convergents: n must be >= 1");
  auto stream = alpha.digits();
  std::vector<Convergent> out;
  i64 h1 = 1, h2 = 0;  // h_{-1}, h_{-2}
  u64 q1 = 0, q2 = 1;  // q_{-1}, q_{-2}
  for (int k = 0; k < n; ++k) {
    auto d = stream->next();
    if (!d)
      throw std::invalid_argument("convergents: digit stream exhausted before n terms");
    i128 h = static_cast<i128>(*d) * h1 + h2;
    u128 q = k == 0 ? 1 : static_cast<u128>(*d) * q1 + q2;
    if (h > INT64_MAX || h < INT64_MIN || q > UINT64_MAX)
      throw budget_error("convergents: values exceed 64 bits");
    out.push_back({static_cast<i64>(h), static_cast<u64>(q)});
    h2 = h1;
    h1 = static_cast<i64>(h);
    q2 = q1;
    q1 = static_cast<u64>(q);
  }
  return out;
}

// ---- parameters and schedule ----

SearchParams params_for(u64 x, double theta) {
  if (x < 3) throw std::invalid_argument("params_for: x must be >= 3");
  if (!(theta > 0.0) || theta >= 1.0)
    throw std::invalid_argument("params_for: theta must lie in (0,1)");
  SearchParams p;
  p.x = x;
  p.theta = theta;
  double lx = std::log(static_cast<double>(x));
  p.delta = std::pow(static_cast<double>(x), -theta);
  p.K = std::exp(theta * lx) * lx * lx;
  p.theorem_range = theta < 0.1;
  return p;
}

std::vector<u64> x_schedule(const std::vector<u64>& q_list) {
  std::vector<u64> out;
  u64 prev_q = 0;
  for (u64 q : q_list) {
    if (q < 2) throw std::invalid_argument("x_schedule: entries must be >= 2");
    if (q <= prev_q) throw std::invalid_argument("x_schedule: entries must increase");
    prev_q = q;
    double x = std::pow(static_cast<double>(q), 20.0 / 7.0);
    if (x > 9e18) throw budget_error("x_schedule: value exceeds 64 bits");
    u64 xi = static_cast<u64>(std::llround(x));
    if (!out.empty() && xi <= out.back())
      throw std::logic_error("x_schedule: schedule not increasing");
    out.push_back(xi);
  }
  return out;
}

// ---- the distance ||alpha p + beta|| ----

void require_precision_ok(u64 p, int prec_bits) {
  // the stored alpha carries prec_bits fractional bits; multiplying by p
  // amplifies its truncation to p * 2^-bits, which must stay below 2^-80
  int margin = prec_bits - 80;
  if (margin < 64 && p >= (u64(1) << margin))
    throw budget_error("frac_norm: precision budget exceeded for this p");
}

namespace {

// exact distance for rational alpha and beta: ||(a/q) p + b/c||
double exact_rat_dist(Rat64 alpha, u64 p, Rat64 beta) {
  u64 g = std::gcd(alpha.den, beta.den);
  u128 M128 = static_cast<u128>(alpha.den) / g * beta.den;
  if (M128 > (u128(1) << 62)) throw budget_error("frac_norm: rational modulus overflow");
  i64 M = static_cast<i64>(M128);
  // reduce stepwise so every product stays below M^2 < 2^124
  i128 c1 = (static_cast<i128>(alpha.num % M) * static_cast<i128>(M / alpha.den)) % M;
  c1 = (c1 * static_cast<i128>(p % static_cast<u64>(M))) % M;
  i128 c2 = (static_cast<i128>(beta.num % M) * static_cast<i128>(M / beta.den)) % M;
  i128 m = (c1 + c2) % M;
  if (m < 0) m += M;
  u64 r = static_cast<u64>(m);
  u64 d = std::min(r, static_cast<u64>(M) - r);
  return static_cast<double>(d) / static_cast<double>(M);
}

} // namespace

double frac_norm(const IrrationalSpec& alpha, u64 p, Rat64 beta, int prec_bits) {
  if (p < 1) throw std::invalid_argument("frac_norm: p must be >= 1");
  check_bits(prec_bits);
  if (alpha.exact_rational()) return exact_rat_dist(alpha.as_rational(), p, beta);
  require_precision_ok(p, prec_bits);
  Frac f = alpha.frac_bits(prec_bits);
  f.mul_u64(p);
  f.add(Frac::from_rational(beta.num, beta.den, prec_bits));
  return f.dist_to_nearest();
}

bool norm_below(const IrrationalSpec& alpha, u64 p, Rat64 beta, double threshold,
                int prec_bits) {
  if (p < 1) throw std::invalid_argument("norm_below: p must be >= 1");
  check_bits(prec_bits);
  if (alpha.exact_rational())
    return exact_rat_dist(alpha.as_rational(), p, beta) < threshold;
  require_precision_ok(p, prec_bits);
  Frac f = alpha.frac_bits(prec_bits);
  f.mul_u64(p);
  f.add(Frac::from_rational(beta.num, beta.den, prec_bits));
  return f.dist_less_than(threshold);
}

// ---- qualifying-prime search ----

std::vector<u64> search_primes(u64 lo, u64 hi, const IrrationalSpec& alpha,
                               Rat64 beta, double theta, const ShiftSystem& A,
                               int prec_bits, int shards) {
  if (lo >= hi) throw std::invalid_argument("search_primes: need lo < hi");
  if (hi - lo > max_range_len)
    throw budget_error("search_primes: range exceeds budget");
  if (theta < 0.0 || theta >= 1.0)
    throw std::invalid_argument("search_primes: theta must lie in [0,1)");
  check_bits(prec_bits);
  u64 a_last = A.shifts().back();
  if (hi > UINT64_MAX - a_last)
    throw budget_error("search_primes: shifted range overflows");
  if (theta > 0.0 && !alpha.exact_rational()) require_precision_ok(hi, prec_bits);

  const bool rational_alpha = alpha.exact_rational();
  Rat64 ra{};
  Frac alpha_frac(prec_bits);
  if (rational_alpha)
    ra = alpha.as_rational();
  else
    alpha_frac = alpha.frac_bits(prec_bits);
  Frac beta_frac = Frac::from_rational(beta.num, beta.den, prec_bits);

  // fixed block grid: results are independent of the shard count
  const u64 block = u64(1) << 20;
  u64 first = lo + 1;
  u64 nblocks = (hi - first) / block + 1;
  std::vector<std::vector<u64>> found(nblocks);

  auto run_block = [&](u64 b) {
    u64 blo = first + b * block;
    u64 bhi = std::min(hi, blo + block - 1);
    auto primes = prime_window(blo, bhi);
    auto sf = rfree_window(blo + A.shifts().front(), bhi + a_last, 2);
    u64 sf_base = blo + A.shifts().front();
    for (u64 p = blo; p <= bhi; ++p) {
      if (!primes[p - blo]) continue;
      bool ok = true;
      for (u64 ai : A.shifts())
        if (!sf[p + ai - sf_base]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (theta > 0.0) {
        double threshold = std::pow(static_cast<double>(p), -theta);
        if (rational_alpha) {
          if (!(exact_rat_dist(ra, p, beta) < threshold)) continue;
        } else {
          Frac f = alpha_frac;
          f.mul_u64(p);
          f.add(beta_frac);
          if (!f.dist_less_than(threshold)) continue;
        }
      }
      found[b].push_back(p);
    }
  };

  int workers = std::max(1, std::min(shards, 64));
  if (workers == 1 || nblocks == 1) {
    for (u64 b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::atomic<u64> next_block{0};
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (u64 b = next_block.fetch_add(1); b < nblocks; b = next_block.fetch_add(1))
          run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<u64> out;
  for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
  return out;
}

int prec_bits_from_env() {
  const char* e = std::getenv("SFLAB_PREC_BITS");
  if (!e) return default_prec_bits;
  long v = std::strtol(e, nullptr, 10);
  if (v <= 128) return 128;
  if (v <= 192) return 192;
  return 256;
}

} // namespace sflab
