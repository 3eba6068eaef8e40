#include "freetop/neighborhoods.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "freetop/errors.hpp"

namespace freetop {

ReducedWord cert_product(const SymCertificate& c) {
  ReducedWord p;
  for (const CertEntry& f : c.factors) {
    p = multiply(p, conjugate(ReducedWord::reduce({f.letter}), f.conjugator));
  }
  return p;
}

std::uint64_t cert_min_letter_level(const IndexChain& chain, const SymCertificate& c) {
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
  for (const CertEntry& f : c.factors) lo = std::min(lo, chain.level(f.letter.index));
  return lo;
}

bool cert_verify(const PhiContext& ctx, const SymCertificate& c, const ReducedWord& w) {
  if (c.spec.dilation < 1) return false;
  std::set<std::uint64_t> slots;
  for (const CertEntry& f : c.factors) {
    if (f.slot < 1) return false;
    if (!slots.insert(f.slot).second) return false;  // distinct slots
    const std::uint64_t threshold =
        ctx.phi_threshold(c.spec.dilation * f.slot, f.conjugator, c.spec.h);
    if (ctx.chain().level(f.letter.index) < threshold) return false;
    // Support containment: letters never drop below level `dilation`.
    if (ctx.chain().level(f.letter.index) < c.spec.dilation) return false;
  }
  return cert_product(c) == w;
}

std::optional<VphiWitness> vphi_member(const PhiContext& ctx, const ReducedWord& w,
                                       std::uint64_t n, const ReducedWord& h) {
  if (w.empty()) throw Error("vphi_member: the identity lies in no V_Phi");

  const CyclicDecomposition dec = cyclic_reduce(w);
  if (dec.core.length() != 1) return std::nullopt;
  const Letter letter = dec.core[0];

  const ReducedWord tail = multiply(dec.wing, h);
  const std::int64_t window = static_cast<std::int64_t>(tail.length()) + 1;

  // scan order 0, +1, -1, ... keeps the witness canonical on ties
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::int64_t best_m = 0;
  for (std::int64_t step = 0; step <= window; ++step) {
    for (const std::int64_t m : step == 0 ? std::vector<std::int64_t>{0}
                                          : std::vector<std::int64_t>{step, -step}) {
      const std::uint64_t t = ctx.phi(n, multiply(letter_power(letter.index, m), tail));
      if (t < best) {
        best = t;
        best_m = m;
      }
    }
  }
  if (ctx.chain().level(letter.index) < best) return std::nullopt;
  return VphiWitness{multiply(letter_power(letter.index, best_m), dec.wing), letter};
}

namespace {

// ---- bounded symmetric-product search ----

struct Candidate {
  Letter letter;
  ReducedWord conjugator;
  ReducedWord factor;        // conjugator^{-1} letter conjugator, reduced
  std::uint64_t slot_bound;  // largest feasible slot (>= 1)
};

// Exponent sums per generator; a factorization into r conjugated letters
// needs sum_a |expsum_a| <= r and a letter for every generator with nonzero
// sum.
std::map<std::uint32_t, std::int64_t> exp_sums(const ReducedWord& w) {
  std::map<std::uint32_t, std::int64_t> s;
  for (const Letter& l : w.letters()) s[l.index] += l.sign;
  std::erase_if(s, [](const auto& kv) { return kv.second == 0; });
  return s;
}

std::uint64_t exp_demand(const ReducedWord& w) {
  std::uint64_t d = 0;
  for (const auto& [idx, sum] : exp_sums(w)) d += static_cast<std::uint64_t>(std::abs(sum));
  return d;
}

class Search {
public:
  Search(const PhiContext& ctx, const ReducedWord& w, const SubbasicSpec& spec,
         const SearchBounds& bounds)
      : ctx_(ctx), target_(w), spec_(spec), bounds_(bounds) {
    std::set<std::uint32_t> idx;
    for (const Letter& l : w.letters()) idx.insert(l.index);
    for (const Letter& l : spec.h.letters()) idx.insert(l.index);
    alphabet_.assign(idx.begin(), idx.end());
    for (std::uint32_t a : alphabet_) {
      if (ctx_.chain().level(a) >= spec_.dilation) letter_pool_.push_back(a);
    }
  }

  MemberResult run() {
    MemberResult res;
    if (target_.empty()) {
      res.status = Membership::Member;
      res.certificate = SymCertificate{{}, spec_};
      return res;
    }
    const std::uint64_t demand = exp_demand(target_);
    for (std::uint32_t r = 1; r <= bounds_.max_factors; ++r) {
      if ((target_.length() % 2) != (r % 2)) continue;
      if (demand > r) continue;
      for (std::uint32_t len = 0; len <= bounds_.max_conj_len; ++len) {
        conj_len_ = len;
        conjugators_ = enumerate_conjugators(len);
        dead_.clear();
        chosen_.clear();
        if (dfs(target_, r)) {
          res.status = Membership::Member;
          res.certificate = finish();
          res.nodes = nodes_;
          return res;
        }
      }
    }
    res.nodes = nodes_;
    return res;
  }

private:
  // Reduced words over the alphabet, length-lex ordered (Letter's ordering
  // puts smaller indices first and + before -).
  std::vector<ReducedWord> enumerate_conjugators(std::uint32_t max_len) const {
    std::vector<ReducedWord> out{ReducedWord{}};
    std::vector<ReducedWord> layer = out;
    for (std::uint32_t l = 1; l <= max_len; ++l) {
      std::vector<ReducedWord> next;
      for (const ReducedWord& g : layer) {
        for (std::uint32_t a : alphabet_) {
          for (int sign : {+1, -1}) {
            const Letter cand{a, static_cast<std::int8_t>(sign)};
            if (!g.empty() && g.back() == inverse_of(cand)) continue;
            std::vector<Letter> word(g.letters().begin(), g.letters().end());
            word.push_back(cand);
            next.push_back(ReducedWord::reduce(word));
          }
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  // Largest slot usable by a factor with this letter and conjugator, or 0.
  std::uint64_t slot_bound(const Letter& letter, const ReducedWord& g) const {
    const std::uint64_t nu = ctx_.chain().level(letter.index);
    const std::uint64_t base = ctx_.phi_threshold(0, g, spec_.h);  // index_sum part
    // threshold(slot) = dilation*slot + base; need nu >= threshold, slot >= 1
    if (nu < base + spec_.dilation) return 0;
    return (nu - base) / spec_.dilation;
  }

  // Deterministic maximal assignment: factors sorted by bound descending get
  // the largest slot still free below their bound. Succeeds iff any
  // assignment into distinct slots >= 1 does.
  static bool assign_slots(std::vector<CertEntry>& entries,
                           const std::vector<std::uint64_t>& bounds) {
    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return bounds[a] > bounds[b]; });
    std::uint64_t ceiling = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i : order) {
      const std::uint64_t slot = std::min(bounds[i], ceiling);
      if (slot < 1) return false;
      entries[i].slot = slot;
      ceiling = slot - 1;
    }
    return true;
  }

  bool dfs(const ReducedWord& rem, std::uint32_t budget) {
    ++nodes_;
    if (budget == 0) return rem.empty() && try_assign();
    if (rem.length() > static_cast<std::size_t>(budget) * (2 * conj_len_ + 1)) return false;
    if (exp_demand(rem) > budget) return false;
    for (const auto& [idx, sum] : exp_sums(rem)) {
      if (ctx_.chain().level(idx) < spec_.dilation) return false;
    }

    if (budget == 1) return last_factor(rem);

    const DeadKey key{rem, budget, profile()};
    if (dead_.contains(key)) return false;

    for (std::uint32_t a : letter_pool_) {
      for (int sign : {+1, -1}) {
        const Letter letter{a, static_cast<std::int8_t>(sign)};
        for (const ReducedWord& g : conjugators_) {
          const std::uint64_t bound = slot_bound(letter, g);
          if (bound < 1) continue;
          const ReducedWord factor = conjugate(ReducedWord::reduce({letter}), g);
          const ReducedWord rest = multiply(invert(factor), rem);
          chosen_.push_back(Candidate{letter, g, factor, bound});
          if (dfs(rest, budget - 1)) return true;
          chosen_.pop_back();
        }
      }
    }
    dead_.emplace(key, true);
    return false;
  }

  // The final factor must equal rem exactly, which forces the letter (the
  // cyclic core) and pins the conjugator to k^m * wing. The m-variants are
  // scanned in length-lex order (m = 0, +1, -1, ...), matching the order
  // blind enumeration would visit them in.
  bool last_factor(const ReducedWord& rem) {
    if (rem.empty()) return false;  // a conjugated letter is never e
    const CyclicDecomposition dec = cyclic_reduce(rem);
    if (dec.core.length() != 1) return false;
    const Letter letter = dec.core[0];
    if (std::find(letter_pool_.begin(), letter_pool_.end(), letter.index) == letter_pool_.end())
      return false;

    const std::int64_t spare =
        static_cast<std::int64_t>(conj_len_) - static_cast<std::int64_t>(dec.wing.length());
    for (std::int64_t step = 0; step <= spare; ++step) {
      for (std::int64_t m : step == 0 ? std::vector<std::int64_t>{0}
                                      : std::vector<std::int64_t>{step, -step}) {
        const ReducedWord g = multiply(letter_power(letter.index, m), dec.wing);
        if (g.length() > conj_len_) continue;
        const std::uint64_t bound = slot_bound(letter, g);
        if (bound < 1) continue;
        chosen_.push_back(Candidate{letter, g, rem, bound});
        if (try_assign()) return true;
        chosen_.pop_back();
      }
    }
    return false;
  }

  bool try_assign() {
    std::vector<CertEntry> entries;
    std::vector<std::uint64_t> bounds;
    entries.reserve(chosen_.size());
    for (const Candidate& c : chosen_) {
      entries.push_back(CertEntry{0, c.conjugator, c.letter});
      bounds.push_back(c.slot_bound);
    }
    if (!assign_slots(entries, bounds)) return false;
    found_ = SymCertificate{std::move(entries), spec_};
    return true;
  }

  SymCertificate finish() const { return found_; }

  // Slot-bound profile of the chosen prefix, capped at max_factors (larger
  // bounds are interchangeable for distinct-slot feasibility).
  std::vector<std::uint32_t> profile() const {
    std::vector<std::uint32_t> p;
    p.reserve(chosen_.size());
    for (const Candidate& c : chosen_) {
      p.push_back(static_cast<std::uint32_t>(
          std::min<std::uint64_t>(c.slot_bound, bounds_.max_factors)));
    }
    std::sort(p.begin(), p.end());
    return p;
  }

  struct DeadKey {
    ReducedWord rem;
    std::uint32_t budget;
    std::vector<std::uint32_t> profile;
    bool operator==(const DeadKey&) const = default;
  };
  struct DeadKeyHash {
    std::size_t operator()(const DeadKey& k) const noexcept {
      std::size_t h = WordHash{}(k.rem) ^ (k.budget * 0x9e3779b97f4a7c15ull);
      for (std::uint32_t b : k.profile) h = h * 1099511628211ull ^ b;
      return h;
    }
  };

  const PhiContext& ctx_;
  ReducedWord target_;
  SubbasicSpec spec_;
  SearchBounds bounds_;
  std::vector<std::uint32_t> alphabet_;
  std::vector<std::uint32_t> letter_pool_;
  std::vector<ReducedWord> conjugators_;
  std::uint32_t conj_len_ = 0;
  std::vector<Candidate> chosen_;
  SymCertificate found_;
  std::unordered_map<DeadKey, bool, DeadKeyHash> dead_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

MemberResult sym_member_bounded(const PhiContext& ctx, const ReducedWord& w,
                                const SubbasicSpec& spec, const SearchBounds& bounds) {
  if (spec.dilation < 1) throw Error("sym_member_bounded: dilation must be >= 1");
  if (bounds.max_factors < 1 || bounds.max_conj_len < 1) {
    throw Error("sym_member_bounded: bounds must be >= 1");
  }
  return Search(ctx, w, spec, bounds).run();
}

SymCertificate cert_invert(const SymCertificate& c) {
  SymCertificate out;
  out.spec = c.spec;
  out.factors.reserve(c.factors.size());
  for (auto it = c.factors.rbegin(); it != c.factors.rend(); ++it) {
    out.factors.push_back(CertEntry{it->slot, it->conjugator, inverse_of(it->letter)});
  }
  return out;
}

SymCertificate cert_square(const SymCertificate& c1, const SymCertificate& c2) {
  if (!(c1.spec == c2.spec)) throw SpecMismatch("cert_square: specs differ");
  if (c1.spec.dilation % 2 != 0) {
    throw SpecMismatch("cert_square: inputs must be taken against a doubled family");
  }
  SymCertificate out;
  out.spec = SubbasicSpec{c1.spec.h, c1.spec.dilation / 2};
  out.factors.reserve(c1.factors.size() + c2.factors.size());
  for (const CertEntry& f : c1.factors) {
    out.factors.push_back(CertEntry{2 * f.slot - 1, f.conjugator, f.letter});
  }
  for (const CertEntry& f : c2.factors) {
    out.factors.push_back(CertEntry{2 * f.slot, f.conjugator, f.letter});
  }
  return out;
}

SymCertificate cert_conjugate(const SymCertificate& c, const ReducedWord& h) {
  if (!(c.spec.h == h)) throw SpecMismatch("cert_conjugate: h differs from the spec translate");
  SymCertificate out;
  out.spec = SubbasicSpec{ReducedWord{}, c.spec.dilation};
  out.factors.reserve(c.factors.size());
  for (const CertEntry& f : c.factors) {
    out.factors.push_back(CertEntry{f.slot, multiply(f.conjugator, h), f.letter});
  }
  return out;
}

}  // namespace freetop
