#include "concord/product_state.hpp"

#include <stdexcept>

namespace concord {

ProductState ProductState::canonicalize(const std::vector<QubitProb>& raw) {
    ProductState st;
    std::size_t n = raw.size();
    st.probs_.reserve(n);
    st.ratio_.reserve(n);
    st.flips_ = BitVec(n);
    st.half_ = BitVec(n);
    st.zero_ = BitVec(n);
    for (std::size_t k = 0; k < n; ++k) {
        QubitProb q = raw[k];
        if (q.p0 < 0 || q.p1 < 0)
            throw std::invalid_argument("qubit probability is negative");
        if (q.p0 + q.p1 != 1)
            throw std::invalid_argument("qubit probabilities do not sum to 1");
        if (q.p1 > q.p0) {
            std::swap(q.p0, q.p1);
            st.flips_.set(k, true);
        }
        if (q.p0 == q.p1) st.half_.set(k, true);
        if (q.p1 == 0) st.zero_.set(k, true);
        st.ratio_.push_back(q.p1 / q.p0);
        st.probs_.push_back(std::move(q));
    }
    return st;
}

Rat ProductState::joint_probability(const BitVec& v) const {
    if (v.size() != probs_.size())
        throw std::invalid_argument("label vector size mismatch");
    Rat p(1);
    for (std::size_t k = 0; k < probs_.size(); ++k)
        p *= v.get(k) ? probs_[k].p1 : probs_[k].p0;
    return p;
}

}
