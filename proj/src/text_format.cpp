#include <cctype>
#include <memory>
#include <sstream>

#include "holobreak/errors.hpp"
#include "holobreak/term_algebra.hpp"

namespace holobreak {

namespace {

struct Node {
    std::size_t pos = 0;
    std::string atom;  // empty for lists
    std::vector<Node> items;
    bool is_list = false;
};

class Reader {
public:
    explicit Reader(const std::string& text) : s_(text) {}

    Node read() {
        skip();
        Node n = read_node();
        skip();
        if (i_ != s_.size()) throw ParseError("trailing input", i_);
        return n;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    Node read_node() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
        Node n;
        n.pos = i_;
        if (s_[i_] == ')') throw ParseError("unexpected ')'", i_);
        if (s_[i_] == '(') {
            n.is_list = true;
            ++i_;
            for (;;) {
                skip();
                if (i_ >= s_.size()) throw ParseError("unclosed '('", n.pos);
                if (s_[i_] == ')') {
                    ++i_;
                    return n;
                }
                n.items.push_back(read_node());
            }
        }
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')')
            n.atom += s_[i_++];
        return n;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

const Node& expect_list(const Node& n, const char* head, std::size_t min_items) {
    if (!n.is_list || n.items.empty() || n.items[0].is_list || n.items[0].atom != head)
        throw ParseError(std::string("expected (") + head + " ...)", n.pos);
    if (n.items.size() < min_items) throw ParseError(std::string("too few items in (") + head + ")", n.pos);
    return n;
}

bool is_keyword(const std::string& a) {
    return a == "sum" || a == "term" || a == "mono" || a == "base" || a == "poly" || a == "c";
}

// Any decimal literal switches the whole expression to numeric mode.
bool all_rational(const Node& n) {
    if (!n.is_list) return is_keyword(n.atom) || looks_rational(n.atom);
    for (const auto& c : n.items)
        if (!all_rational(c)) return false;
    return true;
}

long parse_int(const Node& n) {
    if (n.is_list || !looks_rational(n.atom) || n.atom.find('/') != std::string::npos)
        throw ParseError("expected integer", n.pos);
    return std::stol(n.atom);
}

template <class F>
struct Builder {
    using Scalar = typename F::Scalar;
    using Exponent = typename F::Exponent;

    static double real(const Node& n) {
        try {
            return parse_double(n.atom);
        } catch (const DomainError&) {
            throw ParseError("bad number '" + n.atom + "'", n.pos);
        }
    }

    static mpq_class rational(const Node& n) {
        try {
            return parse_rational(n.atom);
        } catch (const DomainError&) {
            throw ParseError("bad rational '" + n.atom + "'", n.pos);
        }
    }

    static Scalar scalar(const Node& n) {
        if (n.is_list) {
            expect_list(n, "c", 3);
            if (n.items.size() != 3 || n.items[1].is_list || n.items[2].is_list)
                throw ParseError("expected (c re im)", n.pos);
            if constexpr (F::is_exact) {
                return GaussianRational(rational(n.items[1]), rational(n.items[2]));
            } else {
                return Complex(real(n.items[1]), real(n.items[2]));
            }
        }
        if constexpr (F::is_exact) {
            return GaussianRational(rational(n));
        } else {
            return Complex(real(n), 0.0);
        }
    }

    static Exponent exponent(const Node& n) {
        if constexpr (F::is_exact) {
            if (n.is_list) throw ParseError("exact exponents must be real rationals", n.pos);
            return rational(n);
        } else {
            return scalar(n);
        }
    }

    static Monomial mono(const Node& n, int arity) {
        expect_list(n, "mono", 1);
        if (static_cast<int>(n.items.size()) - 1 != arity) throw ParseError("monomial arity mismatch", n.pos);
        Monomial m;
        for (std::size_t k = 1; k < n.items.size(); ++k) {
            long e = parse_int(n.items[k]);
            if (e < 0) throw ParseError("negative monomial exponent", n.items[k].pos);
            m.push_back(static_cast<int>(e));
        }
        return m;
    }

    static MPoly<Scalar> poly(const Node& n, int arity) {
        expect_list(n, "poly", 1);
        MPoly<Scalar> p(arity);
        for (std::size_t k = 1; k < n.items.size(); ++k) {
            const Node& t = n.items[k];
            if (!t.is_list || t.items.size() != 2) throw ParseError("expected (SCALAR (mono ...))", t.pos);
            p.add(mono(t.items[1], arity), scalar(t.items[0]));
        }
        if (p.total_degree() > 2) throw ParseError("base degree exceeds 2", n.pos);
        return p;
    }

    static HoloSum<F> build(const Node& root) {
        expect_list(root, "sum", 2);
        long arity = parse_int(root.items[1]);
        if (arity < 0) throw ParseError("negative arity", root.items[1].pos);
        HoloSum<F> sum(static_cast<int>(arity));
        for (std::size_t k = 2; k < root.items.size(); ++k) {
            const Node& t = expect_list(root.items[k], "term", 3);
            Scalar c = scalar(t.items[1]);
            Monomial m = mono(t.items[2], static_cast<int>(arity));
            std::vector<typename HoloSum<F>::Factor> factors;
            for (std::size_t j = 3; j < t.items.size(); ++j) {
                const Node& b = expect_list(t.items[j], "base", 3);
                if (b.items.size() != 3) throw ParseError("expected (base (poly ...) EXP)", b.pos);
                factors.push_back({poly(b.items[1], static_cast<int>(arity)), exponent(b.items[2])});
            }
            try {
                sum.add_term(c, std::move(m), std::move(factors));
            } catch (const SingularRestriction& e) {
                throw ParseError(e.what(), t.pos);
            }
        }
        return sum;
    }
};

std::string mono_text(const Monomial& m) {
    std::string s = "(mono";
    for (int e : m) s += " " + std::to_string(e);
    return s + ")";
}

}  // namespace

AnySum parse_holosum(const std::string& text) {
    Node root = Reader(text).read();
    if (all_rational(root)) return Builder<Exact>::build(root);
    return Builder<Numeric>::build(root);
}

template <class F>
std::string format_holosum(const HoloSum<F>& f) {
    using Scalar = typename F::Scalar;
    std::ostringstream os;
    os << "(sum " << f.arity();
    for (const auto& [key, c] : f.terms()) {
        os << " (term " << to_string(c) << " " << mono_text(key.mono);
        for (const auto& [id, p] : key.bases) {
            os << " (base (poly";
            for (const auto& [m, v] : base_poly<Scalar>(id).terms()) os << " (" << to_string(v) << " " << mono_text(m) << ")";
            os << ") " << to_string(p) << ")";
        }
        os << ")";
    }
    os << ")";
    return os.str();
}

template std::string format_holosum(const HoloSum<Exact>&);
template std::string format_holosum(const HoloSum<Numeric>&);

}  // namespace holobreak
