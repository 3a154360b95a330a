#include "elfic/localsys.hpp"

#include <doctest.h>

using namespace elfic;

namespace {

QMatrix A() { return QMatrix::from_rows({{1, 1}, {0, 1}}); }
QMatrix B() { return QMatrix::from_rows({{1, 0}, {-1, 1}}); }

// The three-puncture representation: T3 = (T2 T1)^(-1).
MonodromyRep three_puncture() {
    QMatrix t3 = *(B() * A()).inverse();
    return MonodromyRep({A(), B(), t3});
}

// 24 parabolics with product (AB)^12 = 1.
MonodromyRep k3_rep() {
    std::vector<QMatrix> mats;
    for (int i = 0; i < 12; ++i) {
        mats.push_back(B());
        mats.push_back(A());
    }
    return MonodromyRep(std::move(mats));
}

}  // namespace

TEST_SUITE_BEGIN("localsys");

TEST_CASE("construction validates the product") {
    CHECK_THROWS_AS(MonodromyRep({A(), B()}), CheckError);  // AB != 1
    CHECK_THROWS_AS(MonodromyRep({QMatrix(2, 2)}), InputError);  // singular
    MonodromyRep ok({A(), *A().inverse()});
    CHECK(ok.punctures() == 2);
}

TEST_CASE("invariants") {
    MonodromyRep trivial({QMatrix::identity(2), QMatrix::identity(2)});
    CHECK(invariants_dim(trivial) == 2);
    CHECK(invariants_dim(three_puncture()) == 0);  // fixed lines differ
    CHECK(invariants_dim(k3_rep()) == 0);
}

TEST_CASE("h1 of the open curve") {
    CHECK(h1_open(k3_rep()) == 44);          // rank 2, k = 24, invariants 0
    CHECK(h1_open(three_puncture()) == 2);   // chi oracle -2

    // Trivial rank-1 system on P^1 minus 2 points (C^*): h1 = 1.
    MonodromyRep gm({QMatrix::identity(1), QMatrix::identity(1)});
    CHECK(h1_open(gm) == 1);
}

TEST_CASE("local boundary dimensions") {
    CHECK(local_boundary_dim(A()) == 1);  // H^1(disk^*, V) = C for I_1
    CHECK(local_boundary_dim(QMatrix::identity(2)) == 2);
    QMatrix order6 = QMatrix::from_rows({{1, 1}, {-1, 0}});
    CHECK((order6 - QMatrix::identity(2)).det() == 1);  // no invariant vector
    CHECK(local_boundary_dim(order6) == 0);

    // rank-nullity: dim ker(T-1) = dim coker(T-1), computed both ways.
    for (const QMatrix& t : {A(), B(), order6, QMatrix::identity(2)}) {
        int ker = 2 - static_cast<int>((t - QMatrix::identity(2)).rank());
        CHECK(ker == local_boundary_dim(t));
    }
}

TEST_CASE("pushforward cohomology") {
    auto k3 = pushforward_cohomology(k3_rep());
    CHECK(k3.h0 == 0);
    CHECK(k3.h1 == 20);
    CHECK(k3.h2 == 0);

    auto tp = pushforward_cohomology(three_puncture());
    CHECK(tp.h0 == 0);
    CHECK(tp.h1 == 0);
    CHECK(tp.h2 == 0);

    // Trivial rank-2 sheaf on P^1: (2, 0, 2).
    MonodromyRep trivial({QMatrix::identity(2), QMatrix::identity(2), QMatrix::identity(2)});
    auto tr = pushforward_cohomology(trivial);
    CHECK(tr.h0 == 2);
    CHECK(tr.h1 == 0);
    CHECK(tr.h2 == 2);
}

TEST_CASE("duality for determinant-1 representations") {
    for (const MonodromyRep& rep : {k3_rep(), three_puncture()}) {
        CHECK(invariants_dim(rep.dual()) == invariants_dim(rep));
    }
}

TEST_CASE("bulk/brane split") {
    SupportSplit k3 = bulk_brane_split(k3_rep());
    CHECK(k3.exact);
    CHECK(k3.bulk_dim == 20);
    CHECK(k3.total_dim == 44);
    CHECK(k3.brane_dims.size() == 24);
    int branes = 0;
    for (int b : k3.brane_dims) {
        CHECK(b == 1);
        branes += b;
    }
    CHECK(k3.bulk_dim + branes == k3.total_dim);

    SupportSplit tp = bulk_brane_split(three_puncture());
    CHECK(tp.exact);
    CHECK(tp.bulk_dim == 0);
    CHECK(tp.brane_dims == std::vector<int>{1, 1, 0});
    CHECK(tp.total_dim == 2);

    // Outside the vanishing regime: report-only.
    MonodromyRep trivial({QMatrix::identity(2), QMatrix::identity(2)});
    SupportSplit tr = bulk_brane_split(trivial);
    CHECK(!tr.exact);
}

TEST_CASE("adding an identity puncture") {
    // Pushforward h1 is unchanged; the open-curve h1 grows by the rank.
    MonodromyRep base = three_puncture();
    MonodromyRep more({A(), B(), *(B() * A()).inverse(), QMatrix::identity(2)});
    CHECK(pushforward_cohomology(more).h1 == pushforward_cohomology(base).h1);
    CHECK(h1_open(more) == h1_open(base) + 2);
}

TEST_CASE("the K3 representation has unipotent generators with product identity") {
    QMatrix ab = A() * B();
    QMatrix p = QMatrix::identity(2);
    for (int i = 0; i < 6; ++i) p = p * ab;
    CHECK(p.is_identity());  // (AB)^6 = 1
    MonodromyRep rep = k3_rep();
    for (std::size_t i = 0; i < rep.punctures(); ++i) {
        QMatrix n = rep.matrix(i) - QMatrix::identity(2);
        CHECK((n * n).is_zero());  // parabolic
        CHECK(!n.is_zero());
    }
}

TEST_SUITE_END();
