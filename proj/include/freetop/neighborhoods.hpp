#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freetop/scale.hpp"
#include "freetop/words.hpp"

namespace freetop {

/// Designates the subbasic neighborhood <V_{Phi^h_{k n}}>: the symmetric
/// product of the sets V_{Phi_{k n}} right-translated by h. dilation >= 1.
struct SubbasicSpec {
  ReducedWord h;
  std::uint32_t dilation = 1;

  friend bool operator==(const SubbasicSpec&, const SubbasicSpec&) = default;
};

/// One factor of a symmetric-product membership certificate: the conjugated
/// letter conjugator^{-1} * letter * conjugator placed in slot `slot`.
struct CertEntry {
  std::uint64_t slot = 1;
  ReducedWord conjugator;
  Letter letter;

  friend bool operator==(const CertEntry&, const CertEntry&) = default;
};

/// A verifiable witness that a word lies in the subbasic set of `spec`:
/// the factor product (in order) reduces to the word, slots are distinct
/// and >= 1, and each letter k_i clears the scale threshold
///   nu(k_i) >= phi_{dilation * slot_i}(conjugator_i * h).
/// Certificates are plain data; cert_verify recomputes everything and never
/// trusts how a certificate was produced. The empty factor list certifies e.
struct SymCertificate {
  std::vector<CertEntry> factors;
  SubbasicSpec spec;

  friend bool operator==(const SymCertificate&, const SymCertificate&) = default;
};

/// Product of the conjugated letters, reduced.
ReducedWord cert_product(const SymCertificate& c);

/// Full recomputation of every certificate invariant against w.
bool cert_verify(const PhiContext& ctx, const SymCertificate& c, const ReducedWord& w);

/// Smallest chain level among the certificate's letters (UINT64_MAX for the
/// empty certificate). Every certificate at dilation k satisfies
/// min >= k, which keeps all certified words inside the normal subgroup
/// generated by U_k.
std::uint64_t cert_min_letter_level(const IndexChain& chain, const SymCertificate& c);

/// Membership witness for the single-set test w in V_{Phi^h_n}: w is some
/// conjugated letter g^{-1} k^{eps} g with nu(k) >= phi_n(g*h).
struct VphiWitness {
  ReducedWord conjugator;
  Letter letter;
};

/// Exact decision for the single conjugated-letter sets. The conjugator of
/// w = g^{-1} k^{eps} g is unique up to left powers of k, and index_sum over
/// that coset is minimized inside the window |m| <= len(wing*h) + 1 (letters
/// of index >= 1 only ever add weight beyond it; index-0 letters add
/// nothing, and m = 0 is always scanned). Scanning that window makes the
/// decision exact. Throws Error on w = e, which no V_Phi contains.
std::optional<VphiWitness> vphi_member(const PhiContext& ctx, const ReducedWord& w,
                                       std::uint64_t n, const ReducedWord& h);

enum class Membership { Member, Unknown };

struct MemberResult {
  Membership status = Membership::Unknown;
  std::optional<SymCertificate> certificate;
  std::uint64_t nodes = 0;  // search nodes explored, for reporting
};

struct SearchBounds {
  std::uint32_t max_factors = 3;
  std::uint32_t max_conj_len = 2;
};

/// Bounded complete search for a symmetric-product certificate.
///
/// Iterative deepening on the factor count, then on the conjugator length;
/// within a stage the search is depth-first over candidates ordered by
/// (letter index, exponent, conjugator in length-lex order), and the first
/// certificate found in that order is returned. Candidate letters and
/// conjugators range over the generator alphabet of w and h: together with
/// the two explicit bounds this is the third, implicit bound of the search
/// (factorizations through foreign generators exist but are out of reach of
/// any finite candidate set). Unknown therefore never refutes membership.
///
/// Slots are assigned to a found factor sequence deterministically, giving
/// each factor the largest feasible slot (descending greedy, which succeeds
/// whenever any distinct assignment does).
MemberResult sym_member_bounded(const PhiContext& ctx, const ReducedWord& w,
                                const SubbasicSpec& spec, const SearchBounds& bounds);

/// Reversed factor order with inverted letters: certifies w^{-1}.
/// Realizes the symmetry of the sets <V_{Phi_n}>.
SymCertificate cert_invert(const SymCertificate& c);

/// Merges certificates taken against the doubled family (spec dilation 2d)
/// into one against dilation d: slots n of c1 move to 2n-1, slots n of c2
/// to 2n. Sound because the slot families shrink pointwise as the slot
/// grows. Realizes <V_{Phi_{2n}}>^2 inside <V_{Phi_n}>.
/// Throws SpecMismatch if the specs differ or the dilation is odd.
SymCertificate cert_square(const SymCertificate& c1, const SymCertificate& c2);

/// Converts a certificate against translate h into one against translate e
/// for the conjugated word h^{-1} w h: each conjugator g becomes g*h, and
/// the thresholds carry over verbatim. Realizes
/// h^{-1} <V_{Phi^h_n}> h inside <V_{Phi_n}>.
/// Throws SpecMismatch if h differs from the certificate's translate.
SymCertificate cert_conjugate(const SymCertificate& c, const ReducedWord& h);

}  // namespace freetop
