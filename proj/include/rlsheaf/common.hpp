#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rlsheaf {

/// Identifier of a point or an algebra element. All iteration orders are
/// lexicographic in these ids.
using Id = std::string;

/// Subset of an indexed carrier (points of a space, elements of an algebra).
using Subset = boost::dynamic_bitset<>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// --- errors -----------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A property that the construction guarantees did not hold; always a bug in
/// the input data or in this library.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Tables whose derived residual fails adjointness.
class NotResiduated : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    ValidationError(std::string what, std::vector<std::string> details)
        : Error(std::move(what)), details_(std::move(details)) {}
    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    std::vector<std::string> details_;
};

// --- validation reports -----------------------------------------------------

struct Violation {
    std::string axiom;
    std::string witness;
};

struct Report {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }

    void add(std::string axiom, std::string witness) {
        violations.push_back({std::move(axiom), std::move(witness)});
    }
    void merge(const Report& other, const std::string& prefix = {}) {
        for (const auto& v : other.violations)
            violations.push_back({prefix + v.axiom, v.witness});
    }
    std::vector<std::string> lines() const {
        std::vector<std::string> out;
        out.reserve(violations.size());
        for (const auto& v : violations) out.push_back(v.axiom + ": " + v.witness);
        return out;
    }
    void throw_if_failed(const std::string& what) const {
        if (!ok()) throw ValidationError(what, lines());
    }
};

// --- subset helpers ---------------------------------------------------------

inline Subset make_subset(std::size_t n, std::initializer_list<std::size_t> members = {}) {
    Subset s(n);
    for (auto i : members) s.set(i);
    return s;
}

inline Subset full_subset(std::size_t n) {
    Subset s(n);
    s.set();
    return s;
}

template <class F>
void for_each_member(const Subset& s, F&& f) {
    for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) f(i);
}

inline std::vector<std::size_t> members(const Subset& s) {
    std::vector<std::size_t> out;
    out.reserve(s.count());
    for_each_member(s, [&](std::size_t i) { out.push_back(i); });
    return out;
}

/// "{a,b}" using the given id table.
inline std::string format_subset(const Subset& s, const std::vector<Id>& ids) {
    std::string out = "{";
    bool first = true;
    for_each_member(s, [&](std::size_t i) {
        if (!first) out += ",";
        out += ids[i];
        first = false;
    });
    return out + "}";
}

/// Canonical pair id used by products and pullbacks.
inline Id pair_id(const Id& left, const Id& right) { return "(" + left + "|" + right + ")"; }

}  // namespace rlsheaf
