#ifndef ENRIQUES_RATIONAL_HPP
#define ENRIQUES_RATIONAL_HPP

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace enriques {

using Rat = mpq_class;

// Error taxonomy.  The CLI maps these onto its exit-code contract, the
// library throws them directly.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Oracle refusals: the computation is sound but cannot certify an answer
// with the data it was given.
struct refusal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_error : refusal_error {
    using refusal_error::refusal_error;
};
struct irrational_point_error : refusal_error {
    int factor_degree;
    explicit irrational_point_error(int deg)
        : refusal_error("irrational point: leading form has an irreducible factor of degree " +
                        std::to_string(deg) + " with no rational root"),
          factor_degree(deg) {}
};
struct nonfinite_error : refusal_error {
    using refusal_error::refusal_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline long to_long(const Rat& q) {
    if (!is_integer(q)) throw internal_error("expected integer, got " + q.get_str());
    if (!q.get_num().fits_slong_p()) throw internal_error("integer out of range: " + q.get_str());
    return q.get_num().get_si();
}

// Accepts "3", "-3", "3/2", "-3/2".
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    for (size_t k = 0; k < s.size(); ++k) {
        char c = s[k];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && k == 0);
        if (!ok) throw parse_error("bad rational literal '" + s + "'");
    }
    if (s.find('/') != std::string::npos && s.back() == '/')
        throw parse_error("bad rational literal '" + s + "'");
    try {
        Rat q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw parse_error("bad rational literal '" + s + "'");
    }
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace enriques

#endif
