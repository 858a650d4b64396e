#ifndef RAINBOW_LEMMAS_HPP
#define RAINBOW_LEMMAS_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

// Cyclic-group set arithmetic over Z_m, used by the cycle-shortening and
// shift-set machinery. The two lemma checkers exist so that tests can sweep
// the whole input space at small m; they are verifiers, not provers.

namespace rainbow {

/// A subset of Z_m, m in [1, 64], stored as a bitmask.
class CyclicSet {
  public:
    explicit CyclicSet(int modulus);
    CyclicSet(int modulus, std::initializer_list<int> members);
    CyclicSet(int modulus, std::uint64_t bits);

    int modulus() const { return modulus_; }
    std::uint64_t bits() const { return bits_; }
    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    bool contains(int value) const;  // value reduced mod m

    void insert(int value);
    std::vector<int> members() const;

    friend bool operator==(const CyclicSet&, const CyclicSet&) = default;

  private:
    int modulus_;
    std::uint64_t bits_;
};

/// {a + k mod m : a in A}; preserves cardinality.
CyclicSet shift_set(const CyclicSet& a, int k);

/// (A + d) union (A - d).
CyclicSet symmetric_shift_union(const CyclicSet& a, int d);

// With B = (A+d) u (A-d): returns |A| != |B| or A+2d == A. The underlying
// lemma asserts this holds for every A over even m with 1 <= d <= m/2;
// tests establish that by exhaustive sweep.
bool lemma10_implication_holds(const CyclicSet& a, int d);

struct Lemma11Analysis {
    bool bound_holds{false};    // |B| >= |A| + 1 with B = (A+1) u (A-1)
    bool equality{false};       // |B| == |A| + 1
    bool is_progression{false}; // A = {a, a+2, ..., a+2(|A|-1)} for some a
};

// Requires m = 2n even, A nonempty with only odd members and |A| <= n/2;
// throws std::invalid_argument otherwise. The lemma asserts bound_holds
// always and equality => is_progression.
Lemma11Analysis lemma11_analyze(const CyclicSet& a);

/// True iff A = {a, a+step, ..., a+step*(|A|-1)} mod m for some a.
/// The empty set counts as a progression.
bool is_progression_mod(const CyclicSet& a, int step);

}  // namespace rainbow

#endif
