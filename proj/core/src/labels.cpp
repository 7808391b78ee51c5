#include <designlat/errors.hpp>
#include <designlat/labels.hpp>

#include <algorithm>

namespace designlat {

LabelSet::LabelSet(std::initializer_list<Label> labels)
{
    for (auto l : labels)
        bits_ |= 1u << l;
}

LabelSet::LabelSet(const std::vector<Label>& labels)
{
    for (auto l : labels)
        bits_ |= 1u << l;
}

std::vector<Label> LabelSet::labels() const
{
    std::vector<Label> out;
    for (std::uint32_t b = bits_; b; b &= b - 1)
        out.push_back(std::countr_zero(b));
    return out;
}

std::string LabelSet::str() const
{
    std::string s = "{";
    bool first = true;
    for (auto l : labels()) {
        if (!first)
            s += ",";
        first = false;
        s += std::to_string(l);
    }
    return s + "}";
}

bool canonical_less(LabelSet a, LabelSet b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    std::uint32_t x = a.bits(), y = b.bits();
    while (x && y) {
        int i = std::countr_zero(x), j = std::countr_zero(y);
        if (i != j)
            return i < j;
        x &= x - 1;
        y &= y - 1;
    }
    return false;
}

std::vector<LabelSet> subsets_of(LabelSet s)
{
    std::vector<LabelSet> out;
    std::uint32_t b = s.bits();
    for (std::uint32_t sub = b;; sub = (sub - 1) & b) {
        out.emplace_back(sub);
        if (!sub)
            break;
    }
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

std::vector<LabelSet> subsets_of_size(LabelSet s, int k)
{
    std::vector<LabelSet> out;
    for (auto sub : subsets_of(s))
        if (sub.size() == k)
            out.push_back(sub);
    return out;
}

Injection::Injection(std::initializer_list<std::pair<Label, Vertex>> pairs)
{
    image_.fill(kNoVertex);
    for (auto& [l, v] : pairs)
        set(l, v);
}

Injection Injection::identity(LabelSet b)
{
    Injection r;
    for (auto l : b.labels())
        r.set(l, static_cast<Vertex>(l));
    return r;
}

Injection Injection::restrict(LabelSet b) const
{
    Injection r;
    for (std::uint32_t bits = (domain_ & b).bits(); bits; bits &= bits - 1) {
        int l = std::countr_zero(bits);
        r.set(l, image_[l]);
    }
    return r;
}

bool Injection::extends(const Injection& smaller) const
{
    if (!smaller.domain_.subset_of(domain_))
        return false;
    for (std::uint32_t bits = smaller.domain_.bits(); bits; bits &= bits - 1) {
        int l = std::countr_zero(bits);
        if (image_[l] != smaller.image_[l])
            return false;
    }
    return true;
}

bool Injection::is_injective() const
{
    std::array<Vertex, kMaxLabels> img;
    int k = 0;
    for (std::uint32_t bits = domain_.bits(); bits; bits &= bits - 1)
        img[k++] = image_[std::countr_zero(bits)];
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (img[i] == img[j])
                return false;
    return true;
}

bool Injection::maps_into(Vertex v) const
{
    for (std::uint32_t b = domain_.bits(); b; b &= b - 1)
        if (image_[std::countr_zero(b)] == v)
            return true;
    return false;
}

Label Injection::preimage(Vertex v) const
{
    for (std::uint32_t b = domain_.bits(); b; b &= b - 1) {
        int l = std::countr_zero(b);
        if (image_[l] == v)
            return l;
    }
    return -1;
}

std::vector<Vertex> Injection::image_sequence() const
{
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(domain_.size()));
    for (std::uint32_t b = domain_.bits(); b; b &= b - 1)
        out.push_back(image_[std::countr_zero(b)]);
    return out;
}

std::vector<Vertex> Injection::image_sorted() const
{
    auto out = image_sequence();
    std::sort(out.begin(), out.end());
    return out;
}

LabelSet Injection::image_labels() const
{
    LabelSet s;
    for (auto v : image_sequence())
        s = s.with(static_cast<Label>(v));
    return s;
}

Injection relabelling(const Injection& from, const Injection& to)
{
    Injection r;
    for (auto i : to.domain().labels()) {
        Label j = kMaxLabels;
        for (auto l : from.domain().labels())
            if (from.at(l) == to.at(i)) {
                j = l;
                break;
            }
        if (j == kMaxLabels)
            throw DomainMismatch("relabelling: image of " + to.str() + " not covered by " + from.str());
        r.set(i, static_cast<Vertex>(j));
    }
    return r;
}

Injection Injection::inverse() const
{
    for (std::uint32_t bits = domain_.bits(); bits; bits &= bits - 1)
        if (image_[std::countr_zero(bits)] >= kMaxLabels)
            throw DomainMismatch("inverse of a map whose image is not a label set");
    Injection r;
    for (std::uint32_t bits = domain_.bits(); bits; bits &= bits - 1) {
        int l = std::countr_zero(bits);
        r.set(static_cast<Label>(image_[l]), static_cast<Vertex>(l));
    }
    return r;
}

std::size_t Injection::hash() const
{
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ domain_.bits();
    for (std::uint32_t b = domain_.bits(); b; b &= b - 1) {
        h ^= image_[std::countr_zero(b)] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

std::string Injection::str() const
{
    std::string s = "(";
    bool first = true;
    for (auto l : domain_.labels()) {
        if (!first)
            s += ",";
        first = false;
        s += std::to_string(l) + "->" + std::to_string(image_[l]);
    }
    return s + ")";
}

Injection compose(const Injection& outer, const Injection& inner)
{
    Injection r;
    for (std::uint32_t bits = inner.domain().bits(); bits; bits &= bits - 1) {
        int l = std::countr_zero(bits);
        r.set(l, outer.at(static_cast<Label>(inner.at(l))));
    }
    return r;
}

Injection merge(const Injection& a, const Injection& b)
{
    Injection r = a;
    for (std::uint32_t bits = b.domain().bits(); bits; bits &= bits - 1) {
        int l = std::countr_zero(bits);
        r.set(l, b.at(l));
    }
    return r;
}

bool canonical_less(const Injection& a, const Injection& b)
{
    if (a.domain() != b.domain())
        return canonical_less(a.domain(), b.domain());
    for (std::uint32_t bits = a.domain().bits(); bits; bits &= bits - 1) {
        int l = std::countr_zero(bits);
        if (a.at(l) != b.at(l))
            return a.at(l) < b.at(l);
    }
    return false;
}

std::vector<Injection> all_bijections(LabelSet from, LabelSet to)
{
    std::vector<Injection> out;
    if (from.size() != to.size())
        return out;
    auto src = from.labels();
    auto dst = to.labels();
    do {
        Injection m;
        for (std::size_t i = 0; i < src.size(); ++i)
            m.set(src[i], static_cast<Vertex>(dst[i]));
        out.push_back(m);
    } while (std::next_permutation(dst.begin(), dst.end()));
    return out;
}

} // namespace designlat
