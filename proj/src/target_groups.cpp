#include "freetop/target_groups.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>

#include "freetop/errors.hpp"

namespace freetop {

// ---------------------------------------------------------------- dyadic

DyadicRational DyadicRational::make(std::int64_t num, std::uint32_t exp) {
  DyadicRational q{num, exp};
  if (q.num == 0) {
    q.exp = 0;
  } else {
    while (q.exp > 0 && q.num % 2 == 0) {
      q.num /= 2;
      --q.exp;
    }
  }
  return q;
}

// ----------------------------------------------------------- permutation

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (std::uint32_t v : images) {
    if (v >= images.size() || seen[v]) throw Error("not a permutation");
    seen[v] = true;
  }
  while (!images.empty() && images.back() == images.size() - 1) images.pop_back();
  Permutation p;
  p.map_ = std::move(images);
  return p;
}

Permutation Permutation::transposition(std::uint32_t a, std::uint32_t b) {
  if (a == b) return Permutation{};
  std::vector<std::uint32_t> images(std::max(a, b) + 1);
  std::iota(images.begin(), images.end(), 0);
  std::swap(images[a], images[b]);
  return from_images(std::move(images));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  const std::uint32_t n = std::max(a.support_bound(), b.support_bound());
  std::vector<std::uint32_t> images(n);
  for (std::uint32_t x = 0; x < n; ++x) images[x] = a.apply(b.apply(x));
  return Permutation::from_images(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> images(map_.size());
  for (std::uint32_t x = 0; x < map_.size(); ++x) images[map_[x]] = x;
  return from_images(std::move(images));
}

Permutation Permutation::shifted(std::uint32_t offset) const {
  if (map_.empty() || offset == 0) return offset == 0 ? *this : Permutation{};
  std::vector<std::uint32_t> images(map_.size() + offset);
  std::iota(images.begin(), images.end(), 0);
  for (std::uint32_t x = 0; x < map_.size(); ++x) images[x + offset] = map_[x] + offset;
  return from_images(std::move(images));
}

std::string Permutation::cycles() const {
  if (is_identity()) return "e";
  std::string out;
  std::vector<bool> done(map_.size(), false);
  for (std::uint32_t s = 0; s < map_.size(); ++s) {
    if (done[s] || map_[s] == s) continue;
    out += '(';
    std::uint32_t x = s;
    bool first = true;
    do {
      if (!first) out += ' ';
      out += std::to_string(x);
      done[x] = true;
      x = map_[x];
      first = false;
    } while (x != s);
    out += ')';
  }
  return out;
}

// ------------------------------------------------------------- adapters

namespace {

std::int64_t signed_from_index(std::uint64_t i) {
  // 0, 1, -1, 2, -2, ... for i = 0, 1, 2, 3, 4, ...
  if (i == 0) return 0;
  const std::int64_t half = static_cast<std::int64_t>((i + 1) / 2);
  return (i % 2 == 1) ? half : -half;
}

class PadicOracle final : public GroupOracle {
public:
  explicit PadicOracle(std::uint64_t p) : p_(p) {
    if (p < 2) throw ParseError("zp adapter: base must be >= 2");
  }

  std::string id() const override { return "zp" + std::to_string(p_); }
  GroupElem identity() const override { return std::int64_t{0}; }
  GroupElem enumerate(std::uint64_t m) const override {
    if (m == 0) throw Error("enumerate is 1-based");
    return signed_from_index(m - 1);
  }
  GroupElem mul(const GroupElem& a, const GroupElem& b) const override {
    return std::get<std::int64_t>(a) + std::get<std::int64_t>(b);
  }
  GroupElem inv(const GroupElem& a) const override { return -std::get<std::int64_t>(a); }

  bool basis_member(std::uint64_t n, const GroupElem& g) const override {
    std::int64_t x = std::get<std::int64_t>(g);
    for (std::uint64_t i = 0; i < n; ++i) {
      if (x % static_cast<std::int64_t>(p_) != 0) return false;
      x /= static_cast<std::int64_t>(p_);
    }
    return true;
  }
  GroupElem basis_enumerate(std::uint64_t n, std::uint64_t i) const override {
    if (i == 0) return std::int64_t{0};
    std::int64_t step = 1;
    for (std::uint64_t j = 0; j < n; ++j) {
      if (step > std::numeric_limits<std::int64_t>::max() / static_cast<std::int64_t>(p_)) {
        throw DepthExceeded("zp basis enumeration overflows at level " + std::to_string(n));
      }
      step *= static_cast<std::int64_t>(p_);
    }
    return signed_from_index(i) * step;
  }

  std::uint64_t conj_bound(const GroupElem&, std::uint64_t n) const override { return n; }
  std::uint64_t sq_bound(std::uint64_t n) const override { return n; }
  std::optional<std::uint64_t> theta_exact(const GroupElem&, std::uint64_t n) const override {
    return n;
  }
  std::string format(const GroupElem& g) const override {
    return std::to_string(std::get<std::int64_t>(g));
  }

private:
  std::uint64_t p_;
};

class DyadicOracle final : public GroupOracle {
public:
  std::string id() const override { return "dyadic"; }
  GroupElem identity() const override { return DyadicRational{}; }

  GroupElem enumerate(std::uint64_t m) const override {
    if (m == 0) throw Error("enumerate is 1-based");
    if (m == 1) return DyadicRational{};
    // Cantor diagonal over (numerator index, exponent), canonical forms only.
    std::uint64_t count = 1;
    for (std::uint64_t d = 0;; ++d) {
      for (std::uint64_t u = 0; u <= d; ++u) {
        const std::uint64_t v = d - u;  // exponent
        const std::int64_t num = (u % 2 == 0) ? static_cast<std::int64_t>(u / 2 + 1)
                                              : -static_cast<std::int64_t>(u / 2 + 1);
        if (v > 0 && num % 2 == 0) continue;  // not canonical
        if (++count == m) return DyadicRational::make(num, static_cast<std::uint32_t>(v));
      }
    }
  }

  GroupElem mul(const GroupElem& a, const GroupElem& b) const override {
    const auto& x = std::get<DyadicRational>(a);
    const auto& y = std::get<DyadicRational>(b);
    const std::uint32_t e = std::max(x.exp, y.exp);
    if (e - x.exp > 62 || e - y.exp > 62) throw Error("dyadic sum out of range");
    const __int128 num = (static_cast<__int128>(x.num) << (e - x.exp)) +
                         (static_cast<__int128>(y.num) << (e - y.exp));
    if (num > std::numeric_limits<std::int64_t>::max() ||
        num < std::numeric_limits<std::int64_t>::min()) {
      throw Error("dyadic sum out of range");
    }
    return DyadicRational::make(static_cast<std::int64_t>(num), e);
  }
  GroupElem inv(const GroupElem& a) const override {
    const auto& x = std::get<DyadicRational>(a);
    return DyadicRational::make(-x.num, x.exp);
  }

  bool basis_member(std::uint64_t n, const GroupElem& g) const override {
    if (n == 0) return true;  // V_0 = G
    const auto& q = std::get<DyadicRational>(g);
    if (q.num == 0) return true;
    // |num| / 2^exp < 2^{-n}  <=>  |num| * 2^n < 2^exp
    const std::uint64_t mag = static_cast<std::uint64_t>(q.num < 0 ? -q.num : q.num);
    if (q.exp < n) return false;
    const std::uint64_t shift = q.exp - n;
    if (shift >= 63) return true;
    return mag < (std::uint64_t{1} << shift);
  }

  GroupElem basis_enumerate(std::uint64_t n, std::uint64_t i) const override {
    if (i == 0) return DyadicRational{};
    if (n == 0) return enumerate(i + 1);
    // level L >= 1 holds the 2^L values (+-odd)/2^{n+L} with odd < 2^L
    std::uint64_t rest = i - 1;
    std::uint64_t level = 1;
    std::uint64_t width = 2;
    while (rest >= width) {
      rest -= width;
      ++level;
      width *= 2;
    }
    const std::int64_t odd = static_cast<std::int64_t>(2 * (rest / 2) + 1);
    const std::int64_t num = (rest % 2 == 0) ? odd : -odd;
    if (n + level > std::numeric_limits<std::uint32_t>::max()) {
      throw DepthExceeded("dyadic basis enumeration too deep");
    }
    return DyadicRational::make(num, static_cast<std::uint32_t>(n + level));
  }

  std::uint64_t conj_bound(const GroupElem&, std::uint64_t n) const override { return n; }
  std::uint64_t sq_bound(std::uint64_t n) const override { return n == 0 ? 0 : n + 1; }
  std::optional<std::uint64_t> theta_exact(const GroupElem&, std::uint64_t n) const override {
    return n;
  }
  std::string format(const GroupElem& g) const override {
    const auto& q = std::get<DyadicRational>(g);
    if (q.exp == 0) return std::to_string(q.num);
    return std::to_string(q.num) + "/2^" + std::to_string(q.exp);
  }
};

class SymFinOracle final : public GroupOracle {
public:
  std::string id() const override { return "symfin"; }
  GroupElem identity() const override { return Permutation{}; }

  GroupElem enumerate(std::uint64_t m) const override {
    if (m == 0) throw Error("enumerate is 1-based");
    return base_perm(m - 1);
  }
  GroupElem mul(const GroupElem& a, const GroupElem& b) const override {
    return compose(std::get<Permutation>(a), std::get<Permutation>(b));
  }
  GroupElem inv(const GroupElem& a) const override {
    return std::get<Permutation>(a).inverse();
  }

  bool basis_member(std::uint64_t n, const GroupElem& g) const override {
    const auto& p = std::get<Permutation>(g);
    for (std::uint64_t i = 0; i < n; ++i) {
      if (p.apply(static_cast<std::uint32_t>(i)) != i) return false;
    }
    return true;
  }
  GroupElem basis_enumerate(std::uint64_t n, std::uint64_t i) const override {
    // V_n is the copy of the whole group living on {n, n+1, ...}.
    return base_perm(i).shifted(static_cast<std::uint32_t>(n));
  }

  std::uint64_t conj_bound(const GroupElem& g, std::uint64_t n) const override {
    if (n == 0) return 0;
    const auto& p = std::get<Permutation>(g);
    const Permutation q = p.inverse();
    std::uint64_t top = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      top = std::max<std::uint64_t>(top, p.apply(static_cast<std::uint32_t>(i)));
      top = std::max<std::uint64_t>(top, q.apply(static_cast<std::uint32_t>(i)));
    }
    return top + 1;
  }
  std::uint64_t sq_bound(std::uint64_t n) const override { return n; }
  std::optional<std::uint64_t> theta_exact(const GroupElem& g, std::uint64_t n) const override {
    // conj_bound is the true minimum here: a transposition moving any g(i)
    // (or g^{-1}(i)) that sits at or above a smaller candidate level escapes.
    return conj_bound(g, n);
  }
  std::string format(const GroupElem& g) const override {
    return std::get<Permutation>(g).cycles();
  }

private:
  // Enumeration of all finitary permutations: e first, then for each stage
  // s = 2, 3, ... the permutations of {0..s-1} that move s-1, in
  // lexicographic one-line order. After stage s exactly s! permutations
  // have been listed.
  Permutation base_perm(std::uint64_t i) const {
    std::lock_guard<std::mutex> lock(mutex_);
    while (cache_.size() <= i) grow();
    return cache_[i];
  }

  void grow() const {
    const std::uint32_t s = next_stage_++;
    if (s > 12) throw DepthExceeded("symfin enumeration past stage 12");
    std::vector<std::uint32_t> p(s);
    std::iota(p.begin(), p.end(), 0);
    do {
      if (p.back() == s - 1) continue;  // already listed at an earlier stage
      cache_.push_back(Permutation::from_images(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }

  mutable std::mutex mutex_;
  mutable std::vector<Permutation> cache_{Permutation{}};
  mutable std::uint32_t next_stage_ = 2;
};

class FiniteOracle final : public GroupOracle {
public:
  explicit FiniteOracle(FiniteGroup g, std::string label)
      : group_(std::move(g)), label_(std::move(label)) {
    // identity-first enumeration order
    order_.push_back(group_.identity());
    for (std::uint16_t x = 0; x < group_.order(); ++x) {
      if (x != group_.identity()) order_.push_back(x);
    }
  }

  std::string id() const override {
    return label_.empty() ? "finite:" + std::to_string(group_.order()) : label_;
  }
  GroupElem identity() const override { return group_.identity(); }
  GroupElem enumerate(std::uint64_t m) const override {
    if (m == 0) throw Error("enumerate is 1-based");
    if (m > order_.size()) throw DepthExceeded("finite group exhausted");
    return order_[m - 1];
  }
  std::optional<std::uint64_t> enum_size() const override { return order_.size(); }
  GroupElem mul(const GroupElem& a, const GroupElem& b) const override {
    return group_.mul(std::get<std::uint16_t>(a), std::get<std::uint16_t>(b));
  }
  GroupElem inv(const GroupElem& a) const override {
    return group_.inv(std::get<std::uint16_t>(a));
  }

  bool basis_member(std::uint64_t n, const GroupElem& g) const override {
    return n == 0 || std::get<std::uint16_t>(g) == group_.identity();
  }
  GroupElem basis_enumerate(std::uint64_t n, std::uint64_t i) const override {
    const std::uint64_t size = *basis_size(n);
    if (i >= size) throw DepthExceeded("finite basis set exhausted");
    return n == 0 ? order_[i] : GroupElem{group_.identity()};
  }
  std::optional<std::uint64_t> basis_size(std::uint64_t n) const override {
    return n == 0 ? order_.size() : 1;
  }

  std::uint64_t conj_bound(const GroupElem&, std::uint64_t n) const override { return n; }
  std::uint64_t sq_bound(std::uint64_t n) const override { return n; }
  std::optional<std::uint64_t> theta_exact(const GroupElem&, std::uint64_t n) const override {
    if (n == 0) return 0;
    return group_.order() > 1 ? 1 : 0;
  }
  std::string format(const GroupElem& g) const override {
    return group_.name(std::get<std::uint16_t>(g));
  }

  const FiniteGroup& group() const { return group_; }

private:
  FiniteGroup group_;
  std::string label_;
  std::vector<std::uint16_t> order_;
};

}  // namespace

std::shared_ptr<const GroupOracle> adapter_int_padic(std::uint64_t p) {
  return std::make_shared<PadicOracle>(p);
}

std::shared_ptr<const GroupOracle> adapter_sym_fin() { return std::make_shared<SymFinOracle>(); }

std::shared_ptr<const GroupOracle> adapter_dyadic_rationals() {
  return std::make_shared<DyadicOracle>();
}

std::shared_ptr<const GroupOracle> adapter_finite(FiniteGroup group, std::string label) {
  return std::make_shared<FiniteOracle>(std::move(group), std::move(label));
}

std::shared_ptr<const GroupOracle> make_oracle(const std::string& id) {
  if (id == "zp2") return adapter_int_padic(2);
  if (id == "zp3") return adapter_int_padic(3);
  if (id == "symfin") return adapter_sym_fin();
  if (id == "dyadic") return adapter_dyadic_rationals();
  if (id.rfind("finite:", 0) == 0) {
    const std::string arg = id.substr(7);
    if (arg == "s3") return adapter_finite(FiniteGroup::symmetric(3), "finite:s3");
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open Cayley table file: " + arg);
    return adapter_finite(FiniteGroup::parse(in), id);
  }
  throw ParseError("unknown group id: " + id +
                   " (expected zp2|zp3|symfin|dyadic|finite:<file>)");
}

}  // namespace freetop
