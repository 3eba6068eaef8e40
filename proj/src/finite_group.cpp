#include "freetop/finite_group.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

#include "freetop/errors.hpp"

namespace freetop {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::uint16_t>> table,
                                    std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0 || n > 4096) throw ParseError("group table: order must be in 1..4096");
  for (const auto& row : table) {
    if (row.size() != n) throw ParseError("group table: not square");
    for (std::uint16_t v : row) {
      if (v >= n) throw ParseError("group table: entry out of range");
    }
  }

  // identity
  std::uint16_t e = n;
  for (std::uint16_t c = 0; c < n; ++c) {
    bool ok = true;
    for (std::uint16_t g = 0; g < n && ok; ++g) {
      ok = table[c][g] == g && table[g][c] == g;
    }
    if (ok) {
      e = c;
      break;
    }
  }
  if (e == n) throw ParseError("group table: no identity element");

  // inverses
  std::vector<std::uint16_t> inverse(n, 0);
  for (std::uint16_t g = 0; g < n; ++g) {
    std::uint16_t found = n;
    for (std::uint16_t h = 0; h < n; ++h) {
      if (table[g][h] == e && table[h][g] == e) {
        found = h;
        break;
      }
    }
    if (found == n) throw ParseError("group table: element without inverse");
    inverse[g] = found;
  }

  // associativity, full scan
  for (std::uint16_t a = 0; a < n; ++a) {
    for (std::uint16_t b = 0; b < n; ++b) {
      for (std::uint16_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw ParseError("group table: not associative");
        }
      }
    }
  }

  bool abelian = true;
  for (std::uint16_t a = 0; a < n && abelian; ++a) {
    for (std::uint16_t b = a + 1; b < n && abelian; ++b) {
      abelian = table[a][b] == table[b][a];
    }
  }

  FiniteGroup g;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.identity_ = e;
  g.abelian_ = abelian;
  if (names.size() == n) {
    g.names_ = std::move(names);
  } else {
    g.names_.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.names_[i] = "g" + std::to_string(i);
  }
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
  if (n == 0 || n > 4096) throw ParseError("cyclic group order must be in 1..4096");
  std::vector<std::vector<std::uint16_t>> table(n, std::vector<std::uint16_t>(n));
  std::vector<std::string> names(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    names[i] = std::to_string(i);
    for (std::uint32_t j = 0; j < n; ++j) {
      table[i][j] = static_cast<std::uint16_t>((i + j) % n);
    }
  }
  return from_table(std::move(table), std::move(names));
}

namespace {

std::string one_line_name(const std::vector<std::uint8_t>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace

FiniteGroup FiniteGroup::symmetric(std::uint32_t n) {
  if (n == 0 || n > 7) throw ParseError("symmetric group builder supports n in 1..7");
  std::vector<std::uint8_t> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::uint8_t> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  auto index_of = [&](const std::vector<std::uint8_t>& q) {
    return static_cast<std::uint16_t>(
        std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };

  const std::size_t order = perms.size();
  std::vector<std::vector<std::uint16_t>> table(order, std::vector<std::uint16_t>(order));
  std::vector<std::string> names(order);
  std::vector<std::uint8_t> prod(n);
  for (std::size_t i = 0; i < order; ++i) {
    names[i] = one_line_name(perms[i]);
    for (std::size_t j = 0; j < order; ++j) {
      for (std::uint32_t x = 0; x < n; ++x) prod[x] = perms[i][perms[j][x]];
      table[i][j] = index_of(prod);
    }
  }
  return from_table(std::move(table), std::move(names));
}

FiniteGroup FiniteGroup::parse(std::istream& in) {
  std::vector<std::vector<std::uint16_t>> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream row(line);
    std::vector<std::uint16_t> entries;
    long v;
    while (row >> v) {
      if (v < 0 || v > 0xffff) throw ParseError("group table: entry out of range");
      entries.push_back(static_cast<std::uint16_t>(v));
    }
    if (!row.eof()) throw ParseError("group table: non-numeric entry");
    table.push_back(std::move(entries));
  }
  return from_table(std::move(table));
}

namespace {

using ElementSet = std::vector<bool>;  // membership bitmap

ElementSet to_bitmap(const FiniteGroup& g, const std::vector<std::uint16_t>& set) {
  ElementSet b(g.order(), false);
  for (std::uint16_t x : set) {
    if (x >= g.order()) throw ParseError("chain set: element out of range");
    b[x] = true;
  }
  return b;
}

void validate_hypotheses(const FiniteGroup& g,
                         const std::vector<std::vector<std::uint16_t>>& chain,
                         const std::vector<ElementSet>& maps) {
  for (std::size_t n = 0; n < chain.size(); ++n) {
    if (!maps[n][g.identity()]) {
      throw HypothesisViolation("V_" + std::to_string(n) + " misses the identity");
    }
    for (std::uint16_t x : chain[n]) {
      if (!maps[n][g.inv(x)]) {
        throw HypothesisViolation("V_" + std::to_string(n) + " is not symmetric at " +
                                  g.name(x));
      }
    }
  }
  for (std::size_t n = 0; n + 1 < chain.size(); ++n) {
    for (std::uint16_t x : chain[n + 1]) {
      for (std::uint16_t y : chain[n + 1]) {
        if (!maps[n][g.mul(x, y)]) {
          throw HypothesisViolation("V_" + std::to_string(n + 1) + "^2 escapes V_" +
                                    std::to_string(n) + " at " + g.name(x) + "*" + g.name(y));
        }
      }
    }
  }
}

}  // namespace

BkReport bk_check_finite(const FiniteGroup& group,
                         const std::vector<std::vector<std::uint16_t>>& chain,
                         std::uint64_t k, std::uint32_t max_factors) {
  if (chain.empty()) throw HypothesisViolation("empty chain");
  if (k >= chain.size()) throw Error("bk_check_finite: k beyond chain depth");

  std::vector<ElementSet> maps;
  maps.reserve(chain.size());
  for (const auto& s : chain) maps.push_back(to_bitmap(group, s));
  validate_hypotheses(group, chain, maps);

  BkReport report;
  report.k = k;
  report.max_factors = max_factors;
  report.orderings_collapsed = group.is_abelian();

  std::vector<std::uint64_t> slots;
  for (std::uint64_t n = k + 2; n < chain.size(); ++n) slots.push_back(n);

  // Every combination of distinct slots, each ordering of it (unless the
  // group is abelian), every choice of one element per set.
  std::vector<std::uint64_t> combo;
  auto check_ordering = [&](const std::vector<std::uint64_t>& ordered) {
    std::vector<std::size_t> pos(ordered.size(), 0);
    std::vector<std::uint16_t> elems(ordered.size());
    while (true) {
      std::uint16_t prod = group.identity();
      for (std::size_t i = 0; i < ordered.size(); ++i) {
        elems[i] = chain[ordered[i]][pos[i]];
        prod = group.mul(prod, elems[i]);
      }
      ++report.products_checked;
      if (!maps[k][prod]) {
        ++report.violation_count;
        if (report.violations.size() < 32) {
          report.violations.push_back(BkViolation{ordered, elems, prod});
        }
      }
      std::size_t carry = ordered.size();
      while (carry > 0) {
        --carry;
        if (++pos[carry] < chain[ordered[carry]].size()) break;
        pos[carry] = 0;
        if (carry == 0) return;
      }
    }
  };

  auto run_combo = [&]() {
    if (report.orderings_collapsed) {
      check_ordering(combo);
      return;
    }
    std::vector<std::uint64_t> perm = combo;
    std::sort(perm.begin(), perm.end());
    do {
      check_ordering(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };

  auto rec = [&](auto&& self, std::size_t from, std::uint32_t left) -> void {
    if (!combo.empty()) run_combo();
    if (left == 0) return;
    for (std::size_t i = from; i < slots.size(); ++i) {
      combo.push_back(slots[i]);
      self(self, i + 1, left - 1);
      combo.pop_back();
    }
  };
  rec(rec, 0, max_factors);

  return report;
}

}  // namespace freetop
