#include "rainbow/lemmas.hpp"

#include <stdexcept>

namespace rainbow {

namespace {
int reduce(int value, int m) {
    int r = value % m;
    return r < 0 ? r + m : r;
}
}  // namespace

CyclicSet::CyclicSet(int modulus) : modulus_(modulus), bits_(0) {
    if (modulus < 1 || modulus > 64)
        throw std::invalid_argument("CyclicSet: modulus must be in [1, 64]");
}

CyclicSet::CyclicSet(int modulus, std::initializer_list<int> members) : CyclicSet(modulus) {
    for (int v : members) insert(v);
}

CyclicSet::CyclicSet(int modulus, std::uint64_t bits) : CyclicSet(modulus) {
    if (modulus < 64 && (bits >> modulus) != 0)
        throw std::invalid_argument("CyclicSet: bits outside [0, m)");
    bits_ = bits;
}

bool CyclicSet::contains(int value) const {
    return (bits_ >> reduce(value, modulus_)) & 1u;
}

void CyclicSet::insert(int value) { bits_ |= std::uint64_t{1} << reduce(value, modulus_); }

std::vector<int> CyclicSet::members() const {
    std::vector<int> out;
    for (int v = 0; v < modulus_; ++v)
        if ((bits_ >> v) & 1u) out.push_back(v);
    return out;
}

CyclicSet shift_set(const CyclicSet& a, int k) {
    const int m = a.modulus();
    CyclicSet out(m);
    for (int v : a.members()) out.insert(v + k);
    return out;
}

CyclicSet symmetric_shift_union(const CyclicSet& a, int d) {
    const int m = a.modulus();
    CyclicSet out(m, shift_set(a, d).bits() | shift_set(a, -d).bits());
    return out;
}

bool lemma10_implication_holds(const CyclicSet& a, int d) {
    CyclicSet b = symmetric_shift_union(a, d);
    if (a.size() != b.size()) return true;  // hypothesis fails, implication vacuous
    return shift_set(a, 2 * d) == a;
}

Lemma11Analysis lemma11_analyze(const CyclicSet& a) {
    const int m = a.modulus();
    if (m % 2 != 0) throw std::invalid_argument("lemma11_analyze: modulus must be even");
    const int n = m / 2;
    if (a.empty()) throw std::invalid_argument("lemma11_analyze: set must be nonempty");
    for (int v : a.members())
        if (v % 2 == 0) throw std::invalid_argument("lemma11_analyze: members must be odd");
    if (2 * a.size() > n) throw std::invalid_argument("lemma11_analyze: |A| must be <= n/2");

    CyclicSet b = symmetric_shift_union(a, 1);
    Lemma11Analysis out;
    out.bound_holds = b.size() >= a.size() + 1;
    out.equality = b.size() == a.size() + 1;
    out.is_progression = is_progression_mod(a, 2);
    return out;
}

bool is_progression_mod(const CyclicSet& a, int step) {
    if (a.empty()) return true;
    const int m = a.modulus();
    const int k = a.size();
    for (int start : a.members()) {
        CyclicSet walk(m);
        int v = start;
        for (int i = 0; i < k; ++i) {
            walk.insert(v);
            v = reduce(v + step, m);
        }
        if (walk == a) return true;
    }
    return false;
}

}  // namespace rainbow
