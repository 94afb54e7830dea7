#include "gidkit/table.hpp"

#include "gidkit/error.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <cstdlib>
#include <limits>

namespace gidkit {

namespace {

std::size_t checked_size(const std::vector<Variable>& scope) {
    const std::size_t cap = max_states();
    std::size_t n = 1;
    for (const auto& v : scope) {
        if (v.card < 1) throw Error(ErrorKind::InvalidArgument, "variable " + v.name + " has empty domain");
        if (n > cap / static_cast<std::size_t>(v.card))
            throw Error(ErrorKind::TooLarge, "table exceeds the enumeration cap of " + std::to_string(cap) + " states");
        n *= static_cast<std::size_t>(v.card);
    }
    return n;
}

std::vector<std::size_t> strides_of(const std::vector<Variable>& scope) {
    std::vector<std::size_t> strides(scope.size());
    std::size_t s = 1;
    for (std::size_t k = scope.size(); k-- > 0;) {
        strides[k] = s;
        s *= static_cast<std::size_t>(scope[k].card);
    }
    return strides;
}

// Stride of each `target` variable inside `source` (0 when absent).
std::vector<std::size_t> aligned_strides(const std::vector<Variable>& target, const DistTable& source,
                                         const std::vector<std::size_t>& source_strides) {
    std::vector<std::size_t> out(target.size(), 0);
    std::size_t j = 0;
    const auto& scope = source.scope();
    for (std::size_t k = 0; k < target.size(); ++k) {
        while (j < scope.size() && scope[j].name < target[k].name) ++j;
        if (j < scope.size() && scope[j].name == target[k].name) out[k] = source_strides[j];
    }
    return out;
}

// Odometer over `scope`; calls f(result_index, offsets) where offsets track each stride vector.
template <std::size_t N, typename F>
void walk(const std::vector<Variable>& scope, const std::array<std::vector<std::size_t>, N>& strides,
          std::size_t total, F&& f) {
    std::vector<int> digits(scope.size(), 0);
    std::array<std::size_t, N> offsets{};
    for (std::size_t idx = 0; idx < total; ++idx) {
        f(idx, offsets);
        for (std::size_t k = scope.size(); k-- > 0;) {
            ++digits[k];
            for (std::size_t t = 0; t < N; ++t) offsets[t] += strides[t][k];
            if (digits[k] < scope[k].card) break;
            for (std::size_t t = 0; t < N; ++t) offsets[t] -= strides[t][k] * static_cast<std::size_t>(scope[k].card);
            digits[k] = 0;
        }
    }
}

}  // namespace

std::string to_string(const Realization& r) {
    std::string out;
    for (const auto& [k, v] : r) {
        if (!out.empty()) out += ",";
        out += k + "=" + std::to_string(v);
    }
    return out;
}

std::size_t max_states() {
    if (const char* env = std::getenv("GIDKIT_MAX_STATES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 10'000'000;
}

std::vector<Variable> merge_scopes(const std::vector<Variable>& a, const std::vector<Variable>& b) {
    std::vector<Variable> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].name < b[j].name)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].name < a[i].name) {
            out.push_back(b[j++]);
        } else {
            if (a[i].card != b[j].card)
                throw Error(ErrorKind::ScopeMismatch, "variable " + a[i].name + " has inconsistent cardinality");
            out.push_back(a[i++]);
            ++j;
        }
    }
    return out;
}

DistTable::DistTable() : values_{Rational(1)} {}

DistTable::DistTable(std::vector<Variable> scope, std::vector<Rational> values)
    : scope_(std::move(scope)), values_(std::move(values)) {
    for (std::size_t k = 1; k < scope_.size(); ++k)
        if (!(scope_[k - 1].name < scope_[k].name))
            throw Error(ErrorKind::InvalidArgument, "table scope must be strictly sorted by name");
    if (values_.size() != checked_size(scope_))
        throw Error(ErrorKind::InvalidArgument, "table has " + std::to_string(values_.size()) +
                                                    " entries, scope needs " + std::to_string(checked_size(scope_)));
    strides_ = strides_of(scope_);
    for (auto& v : values_) v.canonicalize();
}

DistTable DistTable::constant(const Rational& value) { return DistTable({}, {value}); }

DistTable DistTable::filled(std::vector<Variable> scope, const Rational& value) {
    std::sort(scope.begin(), scope.end(), [](const Variable& a, const Variable& b) { return a.name < b.name; });
    const std::size_t n = checked_size(scope);
    return DistTable(std::move(scope), std::vector<Rational>(n, value));
}

DistTable DistTable::from_function(std::vector<Variable> scope,
                                   const std::function<Rational(const std::vector<int>&)>& f) {
    DistTable t = filled(std::move(scope), Rational(0));
    for (std::size_t i = 0; i < t.values_.size(); ++i) {
        t.values_[i] = f(t.decode(i));
        t.values_[i].canonicalize();
    }
    return t;
}

VarSet DistTable::names() const {
    VarSet out;
    for (const auto& v : scope_) out.insert(v.name);
    return out;
}

bool DistTable::has(const VarId& v) const {
    return std::any_of(scope_.begin(), scope_.end(), [&](const Variable& x) { return x.name == v; });
}

int DistTable::card(const VarId& v) const {
    for (const auto& x : scope_)
        if (x.name == v) return x.card;
    throw Error(ErrorKind::ScopeMismatch, "variable " + v + " not in table scope");
}

std::vector<int> DistTable::decode(std::size_t index) const {
    std::vector<int> digits(scope_.size());
    for (std::size_t k = 0; k < scope_.size(); ++k) {
        digits[k] = static_cast<int>(index / strides_[k]);
        index %= strides_[k];
    }
    return digits;
}

Realization DistTable::realization(std::size_t index) const {
    Realization r;
    const auto digits = decode(index);
    for (std::size_t k = 0; k < scope_.size(); ++k) r[scope_[k].name] = digits[k];
    return r;
}

std::size_t DistTable::encode(const std::vector<int>& digits) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < scope_.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= scope_[k].card)
            throw Error(ErrorKind::InvalidRealization,
                        scope_[k].name + "=" + std::to_string(digits[k]) + " is outside its domain");
        idx += static_cast<std::size_t>(digits[k]) * strides_[k];
    }
    return idx;
}

const Rational& DistTable::at(const Realization& r) const {
    std::vector<int> digits(scope_.size());
    for (std::size_t k = 0; k < scope_.size(); ++k) {
        auto it = r.find(scope_[k].name);
        if (it == r.end()) throw Error(ErrorKind::ScopeMismatch, "realization lacks variable " + scope_[k].name);
        digits[k] = it->second;
    }
    return values_[encode(digits)];
}

DistTable DistTable::multiply(const DistTable& other) const {
    std::vector<Variable> scope = merge_scopes(scope_, other.scope_);
    std::vector<Rational> out(checked_size(scope));
    const std::array<std::vector<std::size_t>, 2> strides{aligned_strides(scope, *this, strides_),
                                                          aligned_strides(scope, other, other.strides_)};
    walk(scope, strides, out.size(), [&](std::size_t idx, const std::array<std::size_t, 2>& off) {
        out[idx] = values_[off[0]] * other.values_[off[1]];
    });
    return DistTable(std::move(scope), std::move(out));
}

DistTable DistTable::sum_out(const VarSet& vars) const {
    std::vector<Variable> kept;
    for (const auto& v : scope_)
        if (!vars.count(v.name)) kept.push_back(v);
    if (kept.size() == scope_.size()) return *this;
    DistTable result = filled(kept, Rational(0));
    const std::array<std::vector<std::size_t>, 1> strides{aligned_strides(scope_, result, result.strides_)};
    walk(scope_, strides, values_.size(), [&](std::size_t idx, const std::array<std::size_t, 1>& off) {
        result.values_[off[0]] += values_[idx];
    });
    return result;
}

DistTable DistTable::reduce(const Realization& fixed) const {
    std::vector<Variable> kept;
    std::vector<std::size_t> kept_strides;
    std::size_t base = 0;
    for (std::size_t k = 0; k < scope_.size(); ++k) {
        auto it = fixed.find(scope_[k].name);
        if (it == fixed.end()) {
            kept.push_back(scope_[k]);
            kept_strides.push_back(strides_[k]);
            continue;
        }
        if (it->second < 0 || it->second >= scope_[k].card)
            throw Error(ErrorKind::InvalidRealization,
                        scope_[k].name + "=" + std::to_string(it->second) + " is outside its domain");
        base += static_cast<std::size_t>(it->second) * strides_[k];
    }
    std::vector<Rational> out(checked_size(kept));
    const std::array<std::vector<std::size_t>, 1> strides{kept_strides};
    walk(kept, strides, out.size(),
         [&](std::size_t idx, const std::array<std::size_t, 1>& off) { out[idx] = values_[base + off[0]]; });
    return DistTable(std::move(kept), std::move(out));
}

DistTable DistTable::divide(const DistTable& den) const {
    for (const auto& v : den.scope_)
        if (!has(v.name) || card(v.name) != v.card)
            throw Error(ErrorKind::ScopeMismatch, "denominator variable " + v.name + " not in numerator scope");
    std::vector<Rational> out(values_.size());
    const std::array<std::vector<std::size_t>, 1> strides{aligned_strides(scope_, den, den.strides_)};
    walk(scope_, strides, values_.size(), [&](std::size_t idx, const std::array<std::size_t, 1>& off) {
        const Rational& d = den.values_[off[0]];
        if (d == 0)
            throw Error(ErrorKind::NonPositiveInput, "zero denominator at " + to_string(den.realization(off[0])));
        out[idx] = values_[idx] / d;
    });
    return DistTable(scope_, std::move(out));
}

DistTable DistTable::expand(const std::vector<Variable>& scope) const {
    std::vector<Variable> target = merge_scopes(scope_, scope);
    if (target.size() == scope_.size()) return *this;
    std::vector<Rational> out(checked_size(target));
    const std::array<std::vector<std::size_t>, 1> strides{aligned_strides(target, *this, strides_)};
    walk(target, strides, out.size(),
         [&](std::size_t idx, const std::array<std::size_t, 1>& off) { out[idx] = values_[off[0]]; });
    return DistTable(std::move(target), std::move(out));
}

Rational DistTable::total() const {
    Rational s = 0;
    for (const auto& v : values_) s += v;
    return s;
}

bool DistTable::operator==(const DistTable& other) const {
    return scope_ == other.scope_ && values_ == other.values_;
}

DistTable eliminate(std::vector<DistTable> factors, const VarSet& vars) {
    VarSet pending;
    for (const auto& f : factors)
        for (const auto& v : f.scope())
            if (vars.count(v.name)) pending.insert(v.name);

    while (!pending.empty()) {
        VarId best;
        long double best_cost = std::numeric_limits<long double>::infinity();
        for (const auto& v : pending) {
            std::map<VarId, int> merged;
            for (const auto& f : factors)
                if (f.has(v))
                    for (const auto& x : f.scope()) merged[x.name] = x.card;
            long double cost = 1;
            for (const auto& [name, card] : merged) cost *= card;
            if (cost < best_cost) {
                best_cost = cost;
                best = v;
            }
        }
        std::vector<DistTable> rest;
        std::optional<DistTable> joined;
        for (auto& f : factors) {
            if (!f.has(best)) {
                rest.push_back(std::move(f));
            } else {
                joined = joined ? joined->multiply(f) : std::move(f);
            }
        }
        rest.push_back(joined->sum_out({best}));
        factors = std::move(rest);
        pending.erase(best);
    }
    DistTable result;
    for (const auto& f : factors) result = result.multiply(f);
    return result;
}

}  // namespace gidkit
