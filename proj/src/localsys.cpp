#include "elfic/localsys.hpp"

namespace elfic {

MonodromyRep::MonodromyRep(std::vector<QMatrix> matrices, std::size_t genus)
    : genus_(genus), t_(std::move(matrices)) {
    if (t_.empty()) throw InputError("monodromy representation needs at least one matrix");
    rank_ = t_[0].rows();
    if (genus_ != 0) throw InputError("only genus 0 is supported");
    QMatrix prod = QMatrix::identity(rank_);
    for (const auto& m : t_) {
        if (m.rows() != rank_ || m.cols() != rank_)
            throw InputError("monodromy matrices must be square of one size");
        if (m.det() == 0) throw InputError("monodromy matrix is singular");
        prod = m * prod;  // T_k ... T_2 T_1
    }
    if (!prod.is_identity())
        throw CheckError("monodromy representation violates T_k...T_1 = identity");
}

MonodromyRep MonodromyRep::dual() const {
    std::vector<QMatrix> duals;
    duals.reserve(t_.size());
    for (const auto& m : t_) {
        auto inv = m.inverse();
        if (!inv) throw CheckError("dual: matrix not invertible");
        duals.push_back(inv->transpose());
    }
    return MonodromyRep(std::move(duals), genus_);
}

int invariants_dim(const MonodromyRep& rep) {
    const std::size_t r = rep.rank();
    QMatrix stack(0, r);
    for (std::size_t i = 0; i < rep.punctures(); ++i)
        stack = stack.vstack(rep.matrix(i) - QMatrix::identity(r));
    return static_cast<int>(stack.kernel_basis().cols());
}

int h1_open(const MonodromyRep& rep) {
    const int k = static_cast<int>(rep.punctures());
    if (k < 1) throw InputError("h1_open requires at least one puncture");
    return invariants_dim(rep) - static_cast<int>(rep.rank()) * (2 - k);
}

int local_boundary_dim(const QMatrix& T) {
    if (T.rows() != T.cols()) throw InputError("monodromy matrix must be square");
    return static_cast<int>(T.rows() - (T - QMatrix::identity(T.rows())).rank());
}

PushforwardCohomology pushforward_cohomology(const MonodromyRep& rep) {
    const int r = static_cast<int>(rep.rank());
    const int k = static_cast<int>(rep.punctures());
    int h0 = invariants_dim(rep);
    int h2 = invariants_dim(rep.dual());
    // chi(P^1, j_* V) stratum by stratum: rank * chi_c(U) plus one invariant
    // stalk per puncture.
    int chi = r * (2 - k);
    for (std::size_t i = 0; i < rep.punctures(); ++i)
        chi += static_cast<int>(rep.rank() -
                                (rep.matrix(i) - QMatrix::identity(rep.rank())).rank());
    int h1 = h0 + h2 - chi;
    if (h1 < 0) throw CheckError("pushforward cohomology: negative h1");
    return {h0, h1, h2};
}

SupportSplit bulk_brane_split(const MonodromyRep& rep) {
    PushforwardCohomology push = pushforward_cohomology(rep);
    SupportSplit s;
    s.bulk_dim = push.h1;
    s.total_dim = h1_open(rep);
    for (std::size_t i = 0; i < rep.punctures(); ++i)
        s.brane_dims.push_back(local_boundary_dim(rep.matrix(i)));
    s.exact = (push.h0 == 0 && push.h2 == 0);
    if (s.exact) {
        int brane_total = 0;
        for (int b : s.brane_dims) brane_total += b;
        if (s.bulk_dim + brane_total != s.total_dim)
            throw CheckError("bulk/brane split: bulk + branes != h1(U, V)");
    }
    return s;
}

}  // namespace elfic
