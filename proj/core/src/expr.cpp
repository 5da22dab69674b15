#include "qp/expr.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qp {

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
} // namespace

ExprPtr gen(const std::string& name)
{
    Expr e;
    e.kind = Expr::Kind::Gen;
    e.name = name;
    return make(std::move(e));
}

ExprPtr scalar(Rational v)
{
    Expr e;
    e.kind = Expr::Kind::Scalar;
    e.value = std::move(v);
    return make(std::move(e));
}

ExprPtr scalar(long v) { return scalar(Rational(v)); }

ExprPtr sum(std::vector<ExprPtr> kids)
{
    if (kids.size() == 1)
        return kids.front();
    Expr e;
    e.kind = Expr::Kind::Sum;
    e.kids = std::move(kids);
    return make(std::move(e));
}

ExprPtr prod(std::vector<ExprPtr> kids)
{
    if (kids.size() == 1)
        return kids.front();
    Expr e;
    e.kind = Expr::Kind::Prod;
    e.kids = std::move(kids);
    return make(std::move(e));
}

ExprPtr inverse(ExprPtr x)
{
    Expr e;
    e.kind = Expr::Kind::Inv;
    e.kids = {std::move(x)};
    return make(std::move(e));
}

ExprPtr pow(ExprPtr x, int n)
{
    if (n < 0)
        throw std::invalid_argument("pow: negative exponent; use inverse()");
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.kids = {std::move(x)};
    e.exponent = n;
    return make(std::move(e));
}

ExprPtr neg(const ExprPtr& e) { return prod({scalar(-1), e}); }
ExprPtr sub(const ExprPtr& a, const ExprPtr& b) { return sum({a, neg(b)}); }
ExprPtr scale(Rational c, const ExprPtr& e) { return prod({scalar(std::move(c)), e}); }
ExprPtr quotient(const ExprPtr& a, const ExprPtr& b) { return prod({a, inverse(b)}); }

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& images)
{
    switch (e->kind) {
    case Expr::Kind::Gen: {
        auto it = images.find(e->name);
        return it == images.end() ? e : it->second;
    }
    case Expr::Kind::Scalar:
        return e;
    default: {
        std::vector<ExprPtr> kids;
        kids.reserve(e->kids.size());
        bool changed = false;
        for (auto& k : e->kids) {
            kids.push_back(substitute(k, images));
            changed = changed || kids.back() != k;
        }
        if (!changed)
            return e;
        Expr out;
        out.kind = e->kind;
        out.exponent = e->exponent;
        out.kids = std::move(kids);
        return make(std::move(out));
    }
    }
}

void collect_gens(const ExprPtr& e, std::vector<std::string>& out)
{
    if (e->kind == Expr::Kind::Gen) {
        if (std::find(out.begin(), out.end(), e->name) == out.end())
            out.push_back(e->name);
        return;
    }
    for (auto& k : e->kids)
        collect_gens(k, out);
}

std::string to_string(const ExprPtr& e)
{
    std::ostringstream os;
    switch (e->kind) {
    case Expr::Kind::Gen:
        os << e->name;
        break;
    case Expr::Kind::Scalar:
        os << to_string(e->value);
        break;
    case Expr::Kind::Sum: {
        os << "(";
        for (size_t i = 0; i < e->kids.size(); ++i)
            os << (i ? " + " : "") << to_string(e->kids[i]);
        os << ")";
        break;
    }
    case Expr::Kind::Prod: {
        for (size_t i = 0; i < e->kids.size(); ++i)
            os << (i ? "*" : "") << to_string(e->kids[i]);
        break;
    }
    case Expr::Kind::Inv:
        os << "(" << to_string(e->kids[0]) << ")^-1";
        break;
    case Expr::Kind::Pow:
        os << "(" << to_string(e->kids[0]) << ")^" << e->exponent;
        break;
    }
    return os.str();
}

ExprPtr Substitution::operator()(const std::string& g) const
{
    auto it = images.find(g);
    return it == images.end() ? gen(g) : it->second;
}

Substitution compose(const Substitution& a, const Substitution& b)
{
    Substitution r;
    // (a*b)(g) = a(b(g)); generators untouched by b but moved by a still move
    for (auto& [g, img] : b.images)
        r.images[g] = substitute(img, a.images);
    for (auto& [g, img] : a.images)
        if (!r.images.count(g))
            r.images[g] = img;
    return r;
}

ExprPtr Derivation::operator()(const ExprPtr& e) const
{
    switch (e->kind) {
    case Expr::Kind::Gen: {
        auto it = values.find(e->name);
        if (it == values.end())
            throw std::out_of_range("derivation undefined on generator " + e->name);
        return it->second;
    }
    case Expr::Kind::Scalar:
        return scalar(0);
    case Expr::Kind::Sum: {
        std::vector<ExprPtr> kids;
        for (auto& k : e->kids)
            kids.push_back((*this)(k));
        return sum(std::move(kids));
    }
    case Expr::Kind::Prod: {
        std::vector<ExprPtr> terms;
        for (size_t i = 0; i < e->kids.size(); ++i) {
            std::vector<ExprPtr> factors = e->kids;
            factors[i] = (*this)(e->kids[i]);
            terms.push_back(prod(std::move(factors)));
        }
        return sum(std::move(terms));
    }
    case Expr::Kind::Inv: {
        const auto& a = e->kids[0];
        return prod({scalar(-1), inverse(a), (*this)(a), inverse(a)});
    }
    case Expr::Kind::Pow: {
        const auto& a = e->kids[0];
        int n = e->exponent;
        std::vector<ExprPtr> terms;
        for (int i = 0; i < n; ++i)
            terms.push_back(prod({pow(a, i), (*this)(a), pow(a, n - 1 - i)}));
        if (terms.empty())
            return scalar(0);
        return sum(std::move(terms));
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace qp
