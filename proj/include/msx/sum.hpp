#pragma once

#include <boost/rational.hpp>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msx/tree.hpp"

namespace msx {

using Coef = boost::rational<long long>;

std::string coef_str(const Coef& c);

// Finite formal linear combination of values, keyed by their canonical key().
// Zero coefficients are never stored.
template <class T>
class LinearSum {
public:
    using Map = std::map<std::string, std::pair<Coef, T>>;

    LinearSum() = default;

    void add(const T& v, Coef c = Coef(1))
    {
        if (c.numerator() == 0)
            return;
        const std::string& k = v.key();
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, std::make_pair(c, v));
            return;
        }
        it->second.first += c;
        if (it->second.first.numerator() == 0)
            terms_.erase(it);
    }

    void add(const LinearSum& o, Coef scale = Coef(1))
    {
        for (const auto& [k, cv] : o.terms_)
            add(cv.second, cv.first * scale);
    }

    LinearSum operator+(const LinearSum& o) const
    {
        LinearSum r = *this;
        r.add(o);
        return r;
    }

    LinearSum operator-(const LinearSum& o) const
    {
        LinearSum r = *this;
        r.add(o, Coef(-1));
        return r;
    }

    LinearSum scaled(Coef c) const
    {
        LinearSum r;
        r.add(*this, c);
        return r;
    }

    // Applies a linear map given on basis elements.
    template <class U>
    LinearSum<U> map(const std::function<LinearSum<U>(const T&)>& f) const
    {
        LinearSum<U> r;
        for (const auto& [k, cv] : terms_)
            r.add(f(cv.second), cv.first);
        return r;
    }

    Coef coef(const std::string& key) const
    {
        auto it = terms_.find(key);
        return it == terms_.end() ? Coef(0) : it->second.first;
    }
    Coef coef_of(const T& v) const { return coef(v.key()); }

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    bool operator==(const LinearSum& o) const
    {
        if (terms_.size() != o.terms_.size())
            return false;
        for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
            if (a->first != b->first || a->second.first != b->second.first)
                return false;
        return true;
    }
    bool operator!=(const LinearSum& o) const { return !(*this == o); }

    // Same terms, ignoring coefficients.
    bool same_support(const LinearSum& o) const
    {
        if (terms_.size() != o.terms_.size())
            return false;
        for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
            if (a->first != b->first)
                return false;
        return true;
    }

    Coef total() const
    {
        Coef s(0);
        for (const auto& [k, cv] : terms_)
            s += cv.first;
        return s;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto& [k, cv] : terms_) {
            std::string c = coef_str(cv.first);
            if (!s.empty())
                s += " + ";
            if (c != "1")
                s += c + "·";
            s += k;
        }
        return s;
    }

private:
    Map terms_;
};

// A pure tensor F_1 ⊗ ... ⊗ F_k of forests.
struct Tensor {
    std::vector<Forest> parts;
    std::string key_;

    Tensor() = default;
    explicit Tensor(std::vector<Forest> p);
    Tensor(Forest a, Forest b) : Tensor(std::vector<Forest>{std::move(a), std::move(b)}) {}

    const std::string& key() const { return key_; }
    const Forest& left() const { return parts.at(0); }
    const Forest& right() const { return parts.at(1); }
};

// Workspace as a summand of a linear combination.
struct WorkspaceTerm {
    Forest forest;
    const std::string& key() const { return forest.key(); }
};

using TensorSum = LinearSum<Tensor>;
using WorkspaceSum = LinearSum<WorkspaceTerm>;

inline WorkspaceSum single(const Forest& f, Coef c = Coef(1))
{
    WorkspaceSum s;
    s.add(WorkspaceTerm{f}, c);
    return s;
}

// Product in the tensor algebra of forest-tensor sums: componentwise disjoint union.
TensorSum tensor_product(const TensorSum& a, const TensorSum& b);

} // namespace msx
