#include "arithsurf/textio.hpp"

#include <cctype>
#include <sstream>

#include "arithsurf/errors.hpp"

namespace arithsurf {

namespace {

struct schema_error_tag : value_error {
    explicit schema_error_tag(const std::string& m) : value_error(m) {}
};

[[noreturn]] void bad(const std::string& m) { throw value_error("parse error: " + m); }

// Tiny recursive-descent parser for polynomial expressions over K in the
// variable t: numbers, sqrt(d), t, + - * / ^ and parentheses.
class ExprParser {
  public:
    ExprParser(const std::string& s, const NumberField& K) : K_(K) {
        for (char c : s)
            if (!isspace(static_cast<unsigned char>(c))) text_ += c;
    }

    Poly<NFElem> parse() {
        Poly<NFElem> e = expr();
        if (pos_ != text_.size()) bad("trailing input at '" + text_.substr(pos_) + "'");
        return e;
    }

  private:
    std::string text_;
    size_t pos_ = 0;
    NumberField K_;

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly<NFElem> expr() {
        Poly<NFElem> acc = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Poly<NFElem> term() {
        Poly<NFElem> acc = power();
        for (;;) {
            if (eat('*')) {
                acc = acc * power();
            } else if (eat('/')) {
                Poly<NFElem> d = power();
                if (d.deg() != 0) bad("division by a non-constant");
                acc = acc * d[0].inverse();
            } else if (peek() == '(' || peek() == 't' || isdigit(static_cast<unsigned char>(peek())) ||
                       peek() == 's') {
                // implicit multiplication, e.g. "2t" or "3(t+1)"
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    Poly<NFElem> power() {
        Poly<NFElem> base = atom();
        if (eat('^')) {
            bool neg = eat('-');
            long e = integer();
            if (neg) {
                if (base.deg() != 0) bad("negative power of a non-constant");
                return Poly<NFElem>::constant(base[0].inverse().pow(e));
            }
            Poly<NFElem> r = Poly<NFElem>::constant(NFElem(K_, 1, 0));
            for (long i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    Poly<NFElem> atom() {
        if (eat('(')) {
            Poly<NFElem> e = expr();
            if (!eat(')')) bad("missing )");
            return e;
        }
        if (peek() == 't') {
            ++pos_;
            return Poly<NFElem>::monomial(NFElem(K_, 1, 0), 1);
        }
        if (text_.compare(pos_, 5, "sqrt(") == 0) {
            pos_ += 5;
            bool neg = eat('-');
            long d = integer();
            if (!eat(')')) bad("missing ) after sqrt");
            if (neg) d = -d;
            if (K_.is_rational() || K_.d != d) bad("sqrt argument outside the base field");
            return Poly<NFElem>::constant(NFElem::sqrt_d(K_));
        }
        if (isdigit(static_cast<unsigned char>(peek()))) {
            long n = integer();
            if (eat('/')) {
                long m = integer();
                return Poly<NFElem>::constant(NFElem(K_, Rat(n, m), 0));
            }
            return Poly<NFElem>::constant(NFElem(K_, Rat(n), 0));
        }
        bad(std::string("unexpected character '") + peek() + "'");
    }

    long integer() {
        size_t start = pos_;
        while (isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) bad("expected an integer");
        return std::stol(text_.substr(start, pos_ - start));
    }
};

}  // namespace

NumberField parse_field(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "Q" || t == "rational") return NumberField::Q();
    if (t == "Q(i)" || t == "Qi") return NumberField::quadratic(-1);
    auto pos = t.find("sqrt");
    if (pos != std::string::npos) {
        std::string num;
        for (size_t i = pos + 4; i < t.size(); ++i)
            if (t[i] == '-' || isdigit(static_cast<unsigned char>(t[i]))) num += t[i];
        if (num.empty()) throw value_error("parse error: field literal " + s);
        return NumberField::quadratic(std::stol(num));
    }
    throw value_error("parse error: field literal " + s);
}

std::string field_str(const NumberField& K) {
    if (K.is_rational()) return "Q";
    std::ostringstream os;
    os << "Q(sqrt " << K.d << ")";
    return os.str();
}

Poly<NFElem> parse_poly(const std::string& s, const NumberField& K) {
    return ExprParser(s, K).parse();
}

std::string poly_to_string(const Poly<NFElem>& q) {
    if (q.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = q.deg(); i >= 0; --i) {
        if (q[i].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << q[i].str() << ")";
        if (i == 1)
            os << "*t";
        else if (i > 1)
            os << "*t^" << i;
        first = false;
    }
    return os.str();
}

PrimeOfB parse_prime(const std::string& s, const NumberField& K) {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
    auto comma = t.find(',');
    long tag = 0;
    std::string pstr = t;
    if (comma != std::string::npos) {
        pstr = t.substr(0, comma);
        tag = std::stol(t.substr(comma + 1));
    }
    Int p(pstr);
    auto v = factor_prime(p, K);
    if (tag < 0 || tag >= static_cast<long>(v.size()))
        throw value_error("parse error: no prime with this tag above " + pstr);
    return v[tag];
}

CurveOnX parse_curve(const std::string& s, const NumberField& K) {
    if (s == "infinity" || s == "inf") return CurveOnX::infinity_section();
    if (s.rfind("poly:", 0) == 0) return CurveOnX::horizontal(parse_poly(s.substr(5), K));
    if (s.rfind("fiber:", 0) == 0) return CurveOnX::vertical(parse_prime(s.substr(6), K));
    throw value_error("parse error: curve literal " + s);
}

FactoredFunction parse_function(const std::string& s, const NumberField& K) {
    // product of '^'-powered parenthesized groups and constants separated by '*'
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    FactoredFunction f = FactoredFunction::one(K);
    size_t i = 0;
    while (i < t.size()) {
        std::string piece;
        if (t[i] == '(') {
            int depth = 0;
            size_t start = i;
            for (; i < t.size(); ++i) {
                if (t[i] == '(') ++depth;
                if (t[i] == ')') {
                    --depth;
                    if (depth == 0) {
                        ++i;
                        break;
                    }
                }
            }
            piece = t.substr(start, i - start);
        } else {
            size_t start = i;
            while (i < t.size() && t[i] != '*') ++i;
            piece = t.substr(start, i - start);
        }
        long e = 1;
        if (i < t.size() && t[i] == '^') {
            ++i;
            bool neg = t[i] == '-';
            if (neg) ++i;
            size_t start = i;
            while (i < t.size() && isdigit(static_cast<unsigned char>(t[i]))) ++i;
            e = std::stol(t.substr(start, i - start));
            if (neg) e = -e;
        }
        if (i < t.size() && t[i] == '*') ++i;
        Poly<NFElem> q = parse_poly(piece, K);
        if (q.is_zero()) throw value_error("zero factor in a function literal");
        if (q.deg() == 0) {
            f = f.times_const(q[0].pow(e));
        } else {
            if (!(q.lc() == NFElem(1))) {
                f = f.times_const(q.lc().pow(e));
                q = make_monic(q);
            }
            f = f.times_atom(q, e);
        }
    }
    return f;
}

}  // namespace arithsurf
