#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wpp/chains.hpp"
#include "wpp/matrix.hpp"
#include "wpp/poset.hpp"
#include "wpp/trees.hpp"

namespace wpp {

/// A chain of the order complex: strictly increasing host element indices.
using Chain = std::vector<int>;

/// Formal integer combination of chains of one dimension (a chain of length r has r+1
/// elements; the empty chain has dimension -1).
struct ChainVector {
  int dim = -1;
  std::map<Chain, Integer> terms;

  ChainVector() = default;
  explicit ChainVector(int d) : dim(d) {}
  static ChainVector single(const Chain& c, const Integer& coeff = 1);

  void add(const Chain& c, const Integer& coeff);
  bool is_zero() const { return terms.empty(); }
  Integer coefficient(const Chain& c) const;
  ChainVector& operator+=(const ChainVector& o);
  ChainVector& operator-=(const ChainVector& o);
  friend ChainVector operator+(ChainVector a, const ChainVector& b) { return a += b; }
  friend ChainVector operator-(ChainVector a, const ChainVector& b) { return a -= b; }
  friend ChainVector operator*(const Integer& s, ChainVector v);
  friend bool operator==(const ChainVector&, const ChainVector&) = default;
};

/// <a, b> with the chains as an orthonormal basis.
Integer pairing(const ChainVector& a, const ChainVector& b);
nlohmann::json to_json(const ChainVector& v, const Poset& host);

/// Order complex of the subposet of `host` on `elements`.
class OrderComplex {
 public:
  OrderComplex(const Poset& host, std::vector<int> elements, const Caps& caps = {});
  /// The open interval (x, y).
  static OrderComplex open_interval(const Poset& host, int x, int y, const Caps& caps = {});
  /// Everything except the bottom (and the top of an augmented poset).
  static OrderComplex without_bottom(const Poset& host, const Caps& caps = {});

  const Poset& host() const { return *host_; }
  const std::vector<int>& elements() const { return elements_; }
  /// Length of the longest chain; -1 for the empty poset.
  int length() const { return static_cast<int>(chains_.size()) - 2; }
  const std::vector<Chain>& chains(int r) const;
  std::optional<int> index(const Chain& c) const;
  std::size_t chain_count() const;

  ChainVector boundary(const ChainVector& v) const;
  /// Inserts one element in every gap, with the virtual bottom and top at the ends.
  ChainVector coboundary(const ChainVector& v) const;
  /// Columns: r-chains; rows: (r-1)-chains.
  std::vector<SparseIntVector> boundary_columns(int r) const;
  IntMatrix boundary_matrix(int r) const;

 private:
  const Poset* host_;
  std::vector<int> elements_;
  std::vector<char> member_;
  std::vector<std::vector<Chain>> chains_;  // chains_[r + 1]
  std::vector<std::map<Chain, int>> index_;
};

struct HomologyReport {
  std::string poset;
  int length = -1;
  std::vector<long long> chain_counts;  // by dimension -1..length
  std::vector<long long> ranks;         // rank of the boundary map into each dimension
  std::vector<long long> betti;         // reduced Betti numbers over Q, dimension -1..length
  std::vector<Integer> torsion_top;     // torsion of the cokernels of the top two boundary maps
  bool top_torsion_free = true;
  double runtime_ms = 0;
};

/// Reduced Betti numbers over Q; the top two boundary maps also get a Smith normal form.
HomologyReport betti_numbers(const OrderComplex& k, const std::string& name = "");
nlohmann::json to_json(const HomologyReport& r);

/// Coboundary space B^r = im(delta_{r-1}) inside C^r of a complex, over Q.
class CoboundarySpace {
 public:
  CoboundarySpace(const OrderComplex& k, int r, bool track_witness = false);
  const OrderComplex& complex() const { return *k_; }
  int dimension() const { return r_; }
  std::size_t rank() const { return echelon_.rank(); }
  /// dim C^r - dim B^r; at the top dimension this is the top Betti number.
  std::size_t corank() const { return k_->chains(r_).size() - rank(); }
  bool contains(const ChainVector& v) const;

  struct Witness {
    ChainVector w;          // a cochain of dimension r-1
    Integer denominator;    // delta(w) = denominator * v
  };
  /// A preimage under delta, found by exact solve (requires track_witness).
  std::optional<Witness> witness(const ChainVector& v) const;
  /// Rank of the images of `vs` in C^r / B^r.
  std::size_t quotient_rank(const std::vector<ChainVector>& vs) const;

 private:
  SparseRatVector coordinates(const ChainVector& v) const;
  const OrderComplex* k_;
  int r_;
  RationalEchelon echelon_;
};

/// rho_T: generator of the top homology of the proper part of Pi_T, as a chain vector in the
/// open interval (0, [n]^i) of `host` (the weighted poset on [n]), normalized so that the
/// coefficient of c(psi(T)) without its ends is +1.
ChainVector fundamental_cycle(const RootedTree& t, const Poset& host);

/// The chain c(t) without its endpoints, in host indices.
Chain interior_chain(const BicoloredTree& t, const Poset& host, const LinearExtension& tau = {});

struct DualityReport {
  IntMatrix pairing;
  Integer determinant;
  bool invertible_integers = false;
  bool invertible_rationals = false;
  bool upper_triangular = false;
  bool unit_diagonal = false;  // all diagonal entries +1
};
DualityReport verify_dual_bases(const std::vector<ChainVector>& cycles, const std::vector<ChainVector>& cochains);

/// Ranks of Whitney cohomology: sum over rank-r elements x of |mu(0, x)|; must equal
/// C(n-1, r) n^r.
std::vector<Integer> whitney_cohomology_ranks(int n, const Caps& caps = {});
/// Same ranks from the reduced Betti numbers of every lower interval (small n only).
std::vector<Integer> whitney_cohomology_ranks_by_homology(int n, const Caps& caps = {});

}  // namespace wpp
