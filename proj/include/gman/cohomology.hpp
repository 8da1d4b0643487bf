#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gman/atiyah.hpp"
#include "gman/calculus.hpp"
#include "gman/dpoly.hpp"
#include "gman/linalg.hpp"
#include "gman/scenario.hpp"

namespace gman {

enum class Side { tpoly, dpoly };
const char* to_string(Side side);

/// Truncation of the complexes. On the dpoly side only normalized
/// cochains (every slot differentiated) of total order <= max_order and
/// arity <= max_arity are kept; on the tpoly side at most max_slots
/// slots. Both truncations are subcomplexes.
struct ComplexCaps {
    int max_order = 4;
    int max_arity = 4;
    int max_slots = 8;
    int max_ce_degree = 0;

    static ComplexCaps from(const Scenario& s);
    /// The same caps with order and arity raised by one.
    ComplexCaps bumped() const;
    friend bool operator==(const ComplexCaps&, const ComplexCaps&) = default;
};

/// One basis cochain: e_I^v (x) x^mono d_slots (tpoly) or
/// e_I^v (x) x^mono d^{key_0} (x) ... (dpoly).
struct BasisTerm {
    Mask ext = 0;
    Mask slots = 0;
    SlotKey key;
    MultiIndex mono;

    int ext_degree() const { return popcount(ext); }
    int internal_degree(Side side) const;
    friend bool operator<(const BasisTerm& a, const BasisTerm& b);
    friend bool operator==(const BasisTerm& a, const BasisTerm& b) = default;
};

/// Weight-homogeneous component of fixed total degree p + q.
class Slice {
  public:
    Slice() = default;
    Slice(Side side, long weight, int degree, ComplexCaps caps, std::vector<BasisTerm> basis);

    Side side() const { return side_; }
    long weight() const { return weight_; }
    int degree() const { return degree_; }
    const ComplexCaps& caps() const { return caps_; }
    const std::vector<BasisTerm>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    std::optional<std::uint32_t> index_of(const BasisTerm& t) const;
    /// Coordinates of a cochain; throws InternalError on a term outside the slice.
    SparseVec encode(const TpolyCochain& c) const;
    SparseVec encode(const DpolyCochain& c) const;
    TpolyCochain tpoly_element(const SparseVec& v) const;
    DpolyCochain dpoly_element(const SparseVec& v) const;
    TpolyCochain tpoly_basis(std::size_t i) const;
    DpolyCochain dpoly_basis(std::size_t i) const;

  private:
    Side side_ = Side::tpoly;
    long weight_ = 0;
    int degree_ = 0;
    ComplexCaps caps_;
    std::vector<BasisTerm> basis_;
    std::map<BasisTerm, std::uint32_t> index_;
};

/// Bidegree (p, q) piece; q is the shifted internal degree (-1 = functions).
Slice enumerate_slice(const Scenario& s, Side side, long weight, int p, int q, const ComplexCaps& caps);
/// All (p, q) with p + q = degree.
Slice enumerate_total_slice(const Scenario& s, Side side, long weight, int degree, const ComplexCaps& caps);

/// Range of total degrees with possibly nonzero slices.
std::pair<int, int> degree_range(const Scenario& s, Side side, const ComplexCaps& caps);
/// Lowest weight with a possibly nonzero slice on either side.
long lowest_weight(const Scenario& s, const ComplexCaps& caps);

enum class Differential { ce, vertical, total };
/// Matrix of the chosen differential from `dom` to `cod`.
ColumnMatrix assemble(const Scenario& s, const Slice& dom, const Slice& cod, Differential which);

struct DegreeCohomology {
    long weight = 0;
    int degree = 0;
    std::size_t slice_dim = 0;
    std::size_t rank_out = 0;
    std::size_t rank_in = 0;
    std::size_t dim = 0;
    std::vector<SparseVec> representatives;  // in slice coordinates
    Slice slice;
    bool d_squared_zero = true;
};

struct CohomologyReport {
    Side side = Side::tpoly;
    long w_lo = 0;
    long w_hi = 0;
    ComplexCaps caps;
    std::vector<DegreeCohomology> entries;  // nonempty slices only

    /// dim H at (weight, degree), 0 if absent.
    std::size_t dim_at(long weight, int degree) const;
    const DegreeCohomology* at(long weight, int degree) const;
};

/// Total cohomology per (weight, degree) for weights in [w_lo, w_hi].
CohomologyReport cohomology(const Scenario& s, Side side, long w_lo, long w_hi, const ComplexCaps& caps,
                            bool keep_representatives = true);

struct HkrMismatch {
    long weight;
    int degree;
    std::size_t tpoly_dim;
    std::size_t dpoly_dim;
};

struct HkrComparison {
    CohomologyReport tpoly;
    CohomologyReport dpoly;
    CohomologyReport tpoly_bumped;
    CohomologyReport dpoly_bumped;
    std::vector<HkrMismatch> mismatches;
    /// Entries whose dimension differs at the bumped caps.
    std::vector<HkrMismatch> unstable;
    /// hkr of the tpoly representatives is closed and independent modulo
    /// exact cochains in every slice.
    bool hkr_injective = true;
    bool hkr_closed = true;
    bool ok() const { return mismatches.empty() && unstable.empty() && hkr_injective && hkr_closed; }
};

/// Compares the two sides for weights in [w_lo, w_hi]; the tpoly side is
/// truncated to at most min(n, arity, order) slots so both windows match.
HkrComparison compare_hkr(const Scenario& s, long w_lo, long w_hi, const ComplexCaps& caps);

/// Decides exactness of dpoly cochains, caching the image of D per
/// (weight, degree, order cap).
class ExactnessOracle {
  public:
    ExactnessOracle(const Scenario& s, ComplexCaps base);
    /// Reduced remainder of every homogeneous component of c modulo the
    /// image of D; empty when c is exact.
    DpolyCochain remainder(const DpolyCochain& c);

  private:
    struct Entry {
        Slice target;
        Echelon image;
    };
    Entry& entry(long weight, int degree, int order);

    const Scenario* s_;
    ComplexCaps base_;
    std::map<std::tuple<long, int, int>, std::unique_ptr<Entry>> cache_;
};

/// Splits a dpoly cochain into (weight, total degree) components.
std::map<std::pair<long, int>, DpolyCochain> split_components(const Scenario& s, const DpolyCochain& c);

struct DufloClass {
    long weight;
    int degree;
    TpolyCochain rep;
    DpolyCochain image;  // Phi_1(rep)
    bool image_closed;
};

struct DufloPair {
    std::size_t a;
    std::size_t b;
    DpolyCochain product_remainder;
    DpolyCochain bracket_remainder;
    DpolyCochain commutativity_remainder;
    bool product_ok() const { return product_remainder.is_zero(); }
    bool bracket_ok() const { return bracket_remainder.is_zero(); }
    bool commutativity_ok() const { return commutativity_remainder.is_zero(); }
};

struct DufloRun {
    std::string map;  // "hkr_td_sqrt" or "hkr"
    std::vector<DufloClass> classes;
    std::vector<DufloPair> pairs;
    std::size_t product_failures = 0;
    std::size_t bracket_failures = 0;
    std::size_t commutativity_failures = 0;
    std::size_t open_images = 0;
    bool passed() const {
        return product_failures == 0 && bracket_failures == 0 && commutativity_failures == 0 && open_images == 0;
    }
};

struct DufloReport {
    long w_lo = 0;
    long w_hi = 0;
    ComplexCaps caps;
    std::uint64_t seed = 0;
    bool sampled = false;
    std::size_t total_pairs = 0;
    MixedForm td_sqrt;  // the twist actually used
    DufloRun twisted;   // Phi_1 = hkr o td^{1/2}
    DufloRun plain;    // Phi_1 = hkr
};

/// Phi_1(a) = ext_hkr(contract(td_sqrt, a)).
DpolyCochain duflo_map(const MixedForm& td_sqrt, const TpolyCochain& a);

/// Checks Phi_1 against product and bracket on tpoly cohomology classes in
/// [w_lo, w_hi]. All ordered pairs are checked when there are at most
/// max_pairs of them; otherwise max_pairs pairs are drawn with `seed`.
/// A non-null `twist` replaces td^{1/2} in the twisted run.
DufloReport duflo_check(const Scenario& s, long w_lo, long w_hi, const ComplexCaps& caps, std::uint64_t seed,
                        std::size_t max_pairs = 1000, const MixedForm* twist = nullptr);

}  // namespace gman
