#include "weakval/weak_values.hpp"

#include <cmath>

#include "weakval/errors.hpp"

namespace weakval {

namespace {

std::vector<StateVector> states_of(const std::vector<NamedState>& posts) {
    std::vector<StateVector> v;
    v.reserve(posts.size());
    for (const NamedState& p : posts) v.push_back(p.state);
    return v;
}

void check_operands(const StateVector& pre, const std::vector<NamedState>& posts,
                    const Observable& op, const EngineOptions& opts) {
    for (const NamedState& p : posts) require_same_space(pre, p.state);
    if (op.dimension() != pre.dimension())
        throw DimensionMismatchError("observable dimension does not match state");
    if (opts.require_complete_basis)
        require_orthonormal(states_of(posts), pre.dimension(), opts.basis_tolerance, true);
}

Complex dot_conj(const StateVector& bra, const std::vector<Complex>& v) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(bra[i]) * v[i];
    return acc;
}

} // namespace

void require_orthonormal(const std::vector<StateVector>& states, std::size_t dimension,
                         double tolerance, bool complete) {
    if (states.empty()) throw DimensionMismatchError("empty post-selection set");
    if (complete && states.size() != dimension)
        throw Error("post states do not form a complete basis");
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i; j < states.size(); ++j) {
            const Complex ov = inner_product(states[i], states[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(ov - expected) > tolerance)
                throw Error("post states are not orthonormal");
        }
}

Complex weak_value(const StateVector& pre, const StateVector& post, const Observable& op,
                   double overlap_floor) {
    const Complex ov = inner_product(post, pre);
    if (std::abs(ov) < overlap_floor)
        throw NullPostSelectionError("post-selection overlap below floor; weak value undefined");
    return matrix_element(post, op, pre) / ov;
}

WeakValueCell WeakValueTable::column_sum_of_squares(std::size_t column) const {
    WeakValueCell out;
    for (const auto& row : rows) {
        if (!row[column].defined) return {Complex{0.0, 0.0}, false};
        out.value += row[column].value * row[column].value;
    }
    return out;
}

Complex WeakValueTable::sum_of_row_averages() const {
    Complex acc{0.0, 0.0};
    for (const Complex& a : row_averages) acc += a;
    return acc;
}

Complex WeakValueTable::weighted_sum_of_squares_average() const {
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < post_labels.size(); ++c) {
        const WeakValueCell s = column_sum_of_squares(c);
        if (s.defined) acc += weights[c] * s.value;
    }
    return acc;
}

WeakValueTable weak_value_table(const StateVector& pre, const std::vector<NamedState>& posts,
                                const std::vector<Observable>& observables,
                                const EngineOptions& opts) {
    for (const Observable& op : observables)
        if (op.dimension() != pre.dimension())
            throw DimensionMismatchError("observable dimension does not match state");
    for (const NamedState& p : posts) require_same_space(pre, p.state);
    if (opts.require_complete_basis)
        require_orthonormal(states_of(posts), pre.dimension(), opts.basis_tolerance, true);

    WeakValueTable t;
    std::vector<Complex> overlaps;
    for (const NamedState& p : posts) {
        t.post_labels.push_back(p.name);
        const Complex ov = inner_product(p.state, pre);
        overlaps.push_back(ov);
        t.weights.push_back(std::norm(ov));
    }

    for (const Observable& op : observables) {
        t.row_names.push_back(op.name());
        const std::vector<Complex> a_pre = op.apply(pre.amplitudes());
        std::vector<WeakValueCell> row;
        Complex average{0.0, 0.0};
        for (std::size_t c = 0; c < posts.size(); ++c) {
            const Complex mel = dot_conj(posts[c].state, a_pre);
            average += std::conj(overlaps[c]) * mel;
            if (std::abs(overlaps[c]) < opts.overlap_floor)
                row.push_back({Complex{0.0, 0.0}, false});
            else
                row.push_back({mel / overlaps[c], true});
        }
        t.rows.push_back(std::move(row));
        t.row_averages.push_back(average);
    }

    for (std::size_t c = 0; c < posts.size(); ++c) {
        WeakValueCell sum;
        for (const auto& row : t.rows) {
            if (!row[c].defined) {
                sum = {Complex{0.0, 0.0}, false};
                break;
            }
            sum.value += row[c].value;
        }
        t.column_sums.push_back(sum);
    }
    return t;
}

std::vector<ColumnResidual> check_consistency_one(const StateVector& pre,
                                                  const std::vector<NamedState>& posts,
                                                  const std::vector<StateVector>& projector_states,
                                                  const EngineOptions& opts) {
    for (const NamedState& p : posts) require_same_space(pre, p.state);
    for (const StateVector& m : projector_states) require_same_space(pre, m);
    require_orthonormal(projector_states, pre.dimension(), opts.basis_tolerance, true);

    std::vector<ColumnResidual> out;
    for (const NamedState& p : posts) {
        const Complex ov = inner_product(p.state, pre);
        if (std::abs(ov) < opts.overlap_floor) {
            out.push_back({p.name, 0.0, true});
            continue;
        }
        Complex sum{0.0, 0.0};
        for (const StateVector& m : projector_states)
            sum += inner_product(p.state, m) * inner_product(m, pre) / ov;
        out.push_back({p.name, std::abs(sum - Complex{1.0, 0.0}), false});
    }
    return out;
}

Complex weak_bilinear_sum(const StateVector& pre, const std::vector<NamedState>& posts,
                          const Observable& a, const Observable& b, const EngineOptions& opts) {
    check_operands(pre, posts, a, opts);
    if (b.dimension() != pre.dimension())
        throw DimensionMismatchError("observable dimension does not match state");

    const std::vector<Complex> a_pre = a.apply(pre.amplitudes());
    const std::vector<Complex> b_pre = b.apply(pre.amplitudes());
    Complex sum{0.0, 0.0};
    for (const NamedState& p : posts) {
        const Complex ov = inner_product(p.state, pre);
        const Complex mel_a = dot_conj(p.state, a_pre);
        const Complex mel_b = dot_conj(p.state, b_pre);
        if (std::abs(ov) >= opts.overlap_floor)
            sum += std::conj(mel_a / ov) * std::norm(ov) * (mel_b / ov);
        else
            sum += std::conj(mel_a) * mel_b;  // continuous extension of the null column
    }
    return sum;
}

double check_consistency_two(const StateVector& pre, const std::vector<NamedState>& posts,
                             const Observable& a, const Observable& b,
                             const EngineOptions& opts) {
    const Complex lhs = weak_bilinear_sum(pre, posts, a, b, opts);
    const std::vector<Complex> ab_pre = a.apply(b.apply(pre.amplitudes()));
    Complex rhs{0.0, 0.0};
    for (std::size_t i = 0; i < ab_pre.size(); ++i) rhs += std::conj(pre[i]) * ab_pre[i];
    return std::abs(lhs - rhs);
}

double variance_via_weak_values(const StateVector& pre, const std::vector<NamedState>& posts,
                                const Observable& op, const EngineOptions& opts) {
    check_operands(pre, posts, op, opts);
    const std::vector<Complex> a_pre = op.apply(pre.amplitudes());
    double second_moment = 0.0;
    Complex first_moment{0.0, 0.0};
    for (const NamedState& p : posts) {
        const Complex ov = inner_product(p.state, pre);
        const Complex mel = dot_conj(p.state, a_pre);
        if (std::abs(ov) >= opts.overlap_floor) {
            const Complex h = mel / ov;
            second_moment += std::norm(h) * std::norm(ov);
            first_moment += h * std::norm(ov);
        } else {
            second_moment += std::norm(mel);
        }
    }
    const Complex var = second_moment - first_moment * first_moment;
    if (std::abs(var.imag()) > 1e-10)
        throw Error("variance has a non-vanishing imaginary part; post set is not a basis");
    return var.real();
}

Complex joint_probability(const StateVector& pre, const StateVector& a, const Observable& b) {
    return inner_product(pre, a) * matrix_element(a, b, pre);
}

AblResult abl_probability(const StateVector& pre, const StateVector& post,
                          const StateVector& intermediate, double overlap_floor) {
    require_same_space(pre, post);
    require_same_space(pre, intermediate);
    const Complex ov = inner_product(post, pre);
    if (std::abs(ov) < overlap_floor)
        throw NullPostSelectionError("post-selection overlap below floor");

    const Complex w = inner_product(post, intermediate) * inner_product(intermediate, pre) / ov;
    AblResult r;
    r.modulus_squared = std::norm(w);
    const double alt = std::norm(inner_product(intermediate, pre)) *
                       std::norm(inner_product(post, intermediate)) / std::norm(ov);
    r.two_form_residual = std::abs(r.modulus_squared - alt);
    r.factual_probability = r.modulus_squared * std::norm(ov);
    return r;
}

double observable_distance(const StateVector& pre, const Observable& a, const Observable& b) {
    if (a.dimension() != b.dimension() || a.dimension() != pre.dimension())
        throw DimensionMismatchError("observable dimensions do not match");
    const std::vector<Complex> da = a.apply(pre.amplitudes());
    const std::vector<Complex> db = b.apply(pre.amplitudes());
    double acc = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) acc += std::norm(da[i] - db[i]);
    return acc;
}

double observable_distance_weak_form(const StateVector& pre, const std::vector<NamedState>& posts,
                                     const Observable& a, const Observable& b,
                                     const EngineOptions& opts) {
    check_operands(pre, posts, a, opts);
    if (b.dimension() != pre.dimension())
        throw DimensionMismatchError("observable dimension does not match state");
    const std::vector<Complex> a_pre = a.apply(pre.amplitudes());
    const std::vector<Complex> b_pre = b.apply(pre.amplitudes());
    double acc = 0.0;
    for (const NamedState& p : posts) {
        const Complex ov = inner_product(p.state, pre);
        const Complex mel_a = dot_conj(p.state, a_pre);
        const Complex mel_b = dot_conj(p.state, b_pre);
        if (std::abs(ov) >= opts.overlap_floor)
            acc += std::norm(ov) * std::norm(mel_a / ov - mel_b / ov);
        else
            acc += std::norm(mel_a - mel_b);
    }
    return acc;
}

std::vector<ColumnResidual> weak_equivalence_residual(const StateVector& pre,
                                                      const std::vector<NamedState>& posts,
                                                      const Observable& a, const Observable& b,
                                                      const EngineOptions& opts) {
    for (const NamedState& p : posts) require_same_space(pre, p.state);
    if (a.dimension() != pre.dimension() || b.dimension() != pre.dimension())
        throw DimensionMismatchError("observable dimension does not match state");
    const std::vector<Complex> a_pre = a.apply(pre.amplitudes());
    const std::vector<Complex> b_pre = b.apply(pre.amplitudes());
    std::vector<ColumnResidual> out;
    for (const NamedState& p : posts) {
        const Complex ov = inner_product(p.state, pre);
        if (std::abs(ov) < opts.overlap_floor) {
            out.push_back({p.name, 0.0, true});
            continue;
        }
        const Complex diff = dot_conj(p.state, a_pre) / ov - dot_conj(p.state, b_pre) / ov;
        out.push_back({p.name, std::abs(diff), false});
    }
    return out;
}

double real_part_row_average(const StateVector& pre, const std::vector<NamedState>& posts,
                             const Observable& op, const EngineOptions& opts) {
    check_operands(pre, posts, op, opts);
    const std::vector<Complex> a_pre = op.apply(pre.amplitudes());
    double acc = 0.0;
    for (const NamedState& p : posts) {
        const Complex ov = inner_product(p.state, pre);
        if (std::abs(ov) >= opts.overlap_floor) acc += (dot_conj(p.state, a_pre) / ov).real() * std::norm(ov);
    }
    return acc;
}

} // namespace weakval
