#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace designlat {

using Label = int;
using Vertex = std::uint16_t;

inline constexpr int kMaxLabels = 16;
inline constexpr Vertex kNoVertex = 0xFFFF;

class LabelSet {
public:
    constexpr LabelSet() = default;
    constexpr explicit LabelSet(std::uint32_t bits) : bits_(bits) {}
    LabelSet(std::initializer_list<Label> labels);
    explicit LabelSet(const std::vector<Label>& labels);

    static LabelSet range(int q) { return LabelSet(q >= 32 ? ~0u : ((1u << q) - 1u)); }

    std::uint32_t bits() const { return bits_; }
    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    bool contains(Label i) const { return (bits_ >> i) & 1u; }
    bool subset_of(LabelSet o) const { return (bits_ & ~o.bits_) == 0; }
    Label min() const { return std::countr_zero(bits_); }
    LabelSet with(Label i) const { return LabelSet(bits_ | (1u << i)); }
    LabelSet without(Label i) const { return LabelSet(bits_ & ~(1u << i)); }
    std::vector<Label> labels() const;
    // rank of label i among members (number of members below i)
    int rank(Label i) const { return std::popcount(bits_ & ((1u << i) - 1u)); }

    friend LabelSet operator|(LabelSet a, LabelSet b) { return LabelSet(a.bits_ | b.bits_); }
    friend LabelSet operator&(LabelSet a, LabelSet b) { return LabelSet(a.bits_ & b.bits_); }
    friend LabelSet operator-(LabelSet a, LabelSet b) { return LabelSet(a.bits_ & ~b.bits_); }
    friend bool operator==(LabelSet a, LabelSet b) { return a.bits_ == b.bits_; }
    friend bool operator!=(LabelSet a, LabelSet b) { return a.bits_ != b.bits_; }

    std::string str() const;

private:
    std::uint32_t bits_ = 0;
};

// Canonical order on label sets: by size, then lexicographic on the sorted member list.
bool canonical_less(LabelSet a, LabelSet b);

// All subsets of s (including empty and s itself), in canonical order.
std::vector<LabelSet> subsets_of(LabelSet s);
std::vector<LabelSet> subsets_of_size(LabelSet s, int k);

// An injective map from a label set into vertices. Label maps (elements of the
// induced complex of a group) reuse this type with labels as the codomain.
class Injection {
public:
    Injection() { image_.fill(kNoVertex); }
    Injection(std::initializer_list<std::pair<Label, Vertex>> pairs);

    static Injection identity(LabelSet b);

    LabelSet domain() const { return domain_; }
    int size() const { return domain_.size(); }
    bool empty() const { return domain_.empty(); }
    Vertex at(Label i) const { return image_[i]; }
    Vertex operator()(Label i) const { return image_[i]; }

    void set(Label i, Vertex v)
    {
        image_[i] = v;
        domain_ = domain_.with(i);
    }
    void erase(Label i)
    {
        image_[i] = kNoVertex;
        domain_ = domain_.without(i);
    }

    Injection restrict(LabelSet b) const;
    bool extends(const Injection& smaller) const;
    bool is_injective() const;
    bool maps_into(Vertex v) const;
    // Label whose image is v, or -1.
    Label preimage(Vertex v) const;
    std::vector<Vertex> image_sorted() const;
    std::vector<Vertex> image_sequence() const;
    LabelSet image_labels() const;
    Injection inverse() const;

    friend bool operator==(const Injection& a, const Injection& b)
    {
        return a.domain_ == b.domain_ && a.image_ == b.image_;
    }
    friend bool operator!=(const Injection& a, const Injection& b) { return !(a == b); }

    std::size_t hash() const;
    std::string str() const;

private:
    LabelSet domain_;
    std::array<Vertex, kMaxLabels> image_;
};

// outer ∘ inner: defined on dom(inner), requires Im(inner) ⊆ dom(outer).
Injection compose(const Injection& outer, const Injection& inner);
// τ on dom(to) with from ∘ τ = to. Unlike compose(from.inverse(), to) this works
// for vertex maps, whose images need not be valid labels.
Injection relabelling(const Injection& from, const Injection& to);
// Union of two maps with disjoint domains.
Injection merge(const Injection& a, const Injection& b);

bool canonical_less(const Injection& a, const Injection& b);

struct CanonicalLess {
    bool operator()(const Injection& a, const Injection& b) const { return canonical_less(a, b); }
    bool operator()(LabelSet a, LabelSet b) const { return canonical_less(a, b); }
};

struct InjectionHash {
    std::size_t operator()(const Injection& a) const { return a.hash(); }
};

// All bijections from `from` onto `to` (|from| = |to|), in canonical order.
std::vector<Injection> all_bijections(LabelSet from, LabelSet to);

} // namespace designlat

template <>
struct std::hash<designlat::Injection> {
    std::size_t operator()(const designlat::Injection& a) const { return a.hash(); }
};
