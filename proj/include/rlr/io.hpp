#pragma once

// The JSON algebra-definition format. Structure constants are sparse tables
// of index tuples followed by a value; every index is explicit, so a file
// never depends on an implied basis order.
//
//   {
//     "name": "Lab0_A4", "p": 2,
//     "A": {"dim": 2, "labels": ["e1", "e2"], "mult": [[i, j, k, v], ...]},
//     "L": {"dim": 2, "labels": ["x", "y"], "bracket": [[i, j, k, v], ...],
//           "pmap": [[...], [...]]},
//     "action": [[a, j, k, v], ...],
//     "anchor": [[[row], ...], ...],
//     "cochain": {"mu": [[i, j, k, v]], "omega": [[[x...], k, v]], "theta": [[i, r, c, v]]},
//     "deformation": {"order": N, "coefficients": [{"t": 1, "mu": ..., "omega": ..., "theta": ...}]},
//     "automorphism": {"order": N, "coefficients": [{"t": 1, "phi": [[r, c, v]]}]},
//     "candidate": {"gamma": [[i, k, v]], "d": [[r, c, v]]}
//   }

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlr/deformation.hpp"

namespace rlr {

/// One nonzero entry of a sparse table. For omega the index is the element
/// coordinates followed by the output coordinate.
struct SparseEntry {
  std::vector<std::size_t> index;
  Scalar value = 0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
  friend auto operator<=>(const SparseEntry&, const SparseEntry&) = default;
};
using SparseTable = std::vector<SparseEntry>;

struct AlgebraSection {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  SparseTable mult;  // [i, j, k, v]: e_i e_j has v at e_k

  friend bool operator==(const AlgebraSection&, const AlgebraSection&) = default;
};

struct LieSection {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  SparseTable bracket;     // [i, j, k, v]: [e_i, e_j] has v at e_k
  std::vector<Vec> pmap;   // pmap[i] = e_i^[p]

  friend bool operator==(const LieSection&, const LieSection&) = default;
};

/// Degree-2 cochain (mu, omega, theta). In characteristic 2 omega is given on
/// basis vectors and the rest follows by polarization; for p >= 3 it is the
/// whole table, unlisted elements mapping to zero. theta(e_i) is a matrix.
struct CochainSection {
  SparseTable mu;     // [i, j, k, v]
  SparseTable omega;  // [[x...], k, v]
  SparseTable theta;  // [i, r, c, v]

  friend bool operator==(const CochainSection&, const CochainSection&) = default;
};

struct DeformationSection {
  std::size_t order = 0;
  std::vector<std::pair<std::size_t, CochainSection>> coefficients;  // by t-degree, increasing

  friend bool operator==(const DeformationSection&, const DeformationSection&) = default;
};

struct AutomorphismSection {
  std::size_t order = 0;
  std::vector<std::pair<std::size_t, SparseTable>> coefficients;  // phi_t entries [r, c, v]

  friend bool operator==(const AutomorphismSection&, const AutomorphismSection&) = default;
};

/// Degree-1 cochain (gamma, d) offered as a primitive.
struct CandidateSection {
  SparseTable gamma;  // [i, k, v]
  SparseTable d;      // [r, c, v]

  friend bool operator==(const CandidateSection&, const CandidateSection&) = default;
};

struct AlgebraFile {
  std::string name = "input";
  std::uint32_t p = 2;
  std::optional<AlgebraSection> A;
  std::optional<LieSection> L;
  SparseTable action;               // [a, j, k, v]: e_a . x_j has v at x_k
  std::vector<std::vector<Vec>> anchor;  // anchor[i] = rows of rho(x_i)
  std::optional<CochainSection> cochain;
  std::optional<DeformationSection> deformation;
  std::optional<AutomorphismSection> automorphism;
  std::optional<CandidateSection> candidate;

  bool has_rlr() const noexcept { return A.has_value() && L.has_value(); }

  friend bool operator==(const AlgebraFile&, const AlgebraFile&) = default;
};

/// Parses and validates a document. Errors are InputError messages naming the
/// line and column of a syntax error, or the JSON path of a bad field.
AlgebraFile parse_algebra_file(const std::string& text);
AlgebraFile read_algebra_file(const std::string& path);
/// Canonical text: sorted sparse tables with zero entries dropped.
std::string serialize(const AlgebraFile& file);

AlgebraFile file_from_example(const Example& ex);

AlgebraPresentation to_algebra(const AlgebraFile& file);
LiePresentation to_lie(const AlgebraFile& file);
RLRAlgebra to_rlr(const AlgebraFile& file);

/// Degree-2 LR cochain in the characteristic-2 chart.
LRCochain to_lr_cochain(const LRContext& ctx, const CochainSection& s);
PCochain2 to_p_cochain(const LRContext& ctx, const CochainSection& s);
PCochain1 to_p_candidate(const LRContext& ctx, const CandidateSection& s);
/// Coefficients 1..order; missing t-degrees are zero.
TruncatedDeformation to_deformation(const LRContext& ctx, const DeformationSection& s);
FormalAutomorphism to_automorphism(const LRContext& ctx, const AutomorphismSection& s);

CochainSection cochain_section(const LRContext& ctx, const PCochain2& c);
DeformationSection deformation_section(const LRContext& ctx, const TruncatedDeformation& d);

}  // namespace rlr
