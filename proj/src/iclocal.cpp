#include "elfic/iclocal.hpp"

#include <sstream>

namespace elfic {

NilpotentTuple::NilpotentTuple(std::size_t dim_v, std::vector<QMatrix> matrices)
    : dim_(dim_v), n_(std::move(matrices)) {
    for (const auto& m : n_) {
        if (m.rows() != dim_ || m.cols() != dim_)
            throw InputError("nilpotent tuple: matrix shape mismatch");
        // N^dim = 0 characterizes nilpotency over a field.
        QMatrix p = QMatrix::identity(dim_);
        for (std::size_t k = 0; k < dim_; ++k) p = p * m;
        if (!p.is_zero()) throw CheckError("nilpotent tuple: matrix is not nilpotent");
    }
    for (std::size_t i = 0; i < n_.size(); ++i)
        for (std::size_t j = i + 1; j < n_.size(); ++j)
            if (!(n_[i] * n_[j] == n_[j] * n_[i]))
                throw CheckError("nilpotent tuple: matrices do not commute");
}

int NilpotentTuple::common_kernel_dim() const {
    if (n_.empty()) return static_cast<int>(dim_);
    QMatrix stack = n_[0];
    for (std::size_t i = 1; i < n_.size(); ++i) stack = stack.vstack(n_[i]);
    return static_cast<int>(stack.kernel_basis().cols());
}

bool ChainComplex::d_squared_zero() const {
    for (std::size_t p = 0; p + 1 < differentials.size(); ++p)
        if (!(differentials[p + 1] * differentials[p]).is_zero()) return false;
    return true;
}

namespace {

// Subsets of {0..n-1} of size p in lexicographic order.
void subsets_of_size(std::size_t n, std::size_t p, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == p) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

std::string subset_label(const std::vector<std::size_t>& s) {
    std::string lab;
    for (std::size_t i : s) {
        if (!lab.empty()) lab += ",";
        lab += std::to_string(i + 1);
    }
    return lab;
}

}  // namespace

ChainComplex build_b_complex(const NilpotentTuple& t) {
    const std::size_t n = t.count();
    const std::size_t dim = t.dim_v();

    // For each subset J: the product N_J and a basis of its column space.
    struct Summand {
        std::vector<std::size_t> subset;
        QMatrix basis;  // dim x (dim image N_J)
    };
    std::vector<std::vector<Summand>> degrees(n + 1);
    for (std::size_t p = 0; p <= n; ++p) {
        std::vector<std::vector<std::size_t>> subs;
        subsets_of_size(n, p, subs);
        for (auto& J : subs) {
            QMatrix prod = QMatrix::identity(dim);
            for (std::size_t j : J) prod = prod * t.matrix(j);
            degrees[p].push_back({J, prod.column_space_basis()});
        }
    }

    ChainComplex c;
    c.space_dims.resize(n + 1);
    c.summand_labels.resize(n + 1);
    std::vector<std::vector<std::size_t>> offsets(n + 1);  // column offset per summand
    for (std::size_t p = 0; p <= n; ++p) {
        int dim_p = 0;
        for (auto& s : degrees[p]) {
            offsets[p].push_back(dim_p);
            c.summand_labels[p].push_back(subset_label(s.subset));
            dim_p += static_cast<int>(s.basis.cols());
        }
        c.space_dims[p] = dim_p;
    }

    for (std::size_t p = 0; p + 1 <= n; ++p) {
        QMatrix d(c.space_dims[p + 1], c.space_dims[p]);
        for (std::size_t tj = 0; tj < degrees[p + 1].size(); ++tj) {
            const auto& target = degrees[p + 1][tj];
            // Each source summand omits one element j_s of the target subset.
            for (std::size_t s = 0; s < target.subset.size(); ++s) {
                std::vector<std::size_t> omitted = target.subset;
                std::size_t js = omitted[s];
                omitted.erase(omitted.begin() + s);
                // Locate the source summand with this subset.
                std::size_t sj = 0;
                while (sj < degrees[p].size() && degrees[p][sj].subset != omitted) ++sj;
                const auto& source = degrees[p][sj];

                int sign = (s % 2 == 0) ? 1 : -1;
                QMatrix image = t.matrix(js) * source.basis;  // columns live in im(N_target)
                auto coords = target.basis.solve(image);
                if (!coords)
                    throw CheckError("B-complex: differential image escapes target summand");
                for (std::size_t i = 0; i < coords->rows(); ++i)
                    for (std::size_t j = 0; j < coords->cols(); ++j)
                        d.at(offsets[p + 1][tj] + i, offsets[p][sj] + j) =
                            coords->at(i, j) * sign;
            }
        }
        c.differentials.push_back(std::move(d));
    }

    if (!c.d_squared_zero()) throw CheckError("B-complex: d^2 != 0");
    return c;
}

std::vector<int> complex_cohomology(const ChainComplex& c) {
    if (!c.d_squared_zero()) throw CheckError("complex_cohomology: d^2 != 0");
    const std::size_t top = c.space_dims.size();
    std::vector<int> h(top);
    for (std::size_t p = 0; p < top; ++p) {
        int dim_p = c.space_dims[p];
        int rank_out = (p < c.differentials.size() && c.differentials[p].rows() > 0)
                           ? static_cast<int>(c.differentials[p].rank())
                           : 0;
        int rank_in = (p > 0 && c.differentials[p - 1].rows() > 0)
                          ? static_cast<int>(c.differentials[p - 1].rank())
                          : 0;
        h[p] = dim_p - rank_out - rank_in;
        if (h[p] < 0) throw CheckError("complex_cohomology: negative dimension");
    }
    return h;
}

std::vector<int> ic_stalk_dims(const NilpotentTuple& t) {
    return complex_cohomology(build_b_complex(t));
}

TwoTermReduction two_term_reduction(const NilpotentTuple& t) {
    if (t.count() != 2) throw InputError("two_term_reduction requires exactly two nilpotents");
    const std::size_t dim = t.dim_v();
    const QMatrix& n1 = t.matrix(0);
    const QMatrix& n2 = t.matrix(1);

    QMatrix b1_1 = n1.column_space_basis();
    QMatrix b1_2 = n2.column_space_basis();
    QMatrix b2 = (n1 * n2).column_space_basis();

    // psi = (N2, -N1) on N1 V (+) N2 V, in V coordinates.
    QMatrix psi_cols = (n2 * b1_1).hstack((n1 * b1_2) * Rational(-1));
    bool surjective = psi_cols.rank() == b2.cols();
    if (!surjective)
        throw CheckError("two_term_reduction: psi = (N2,-N1) is not surjective onto N1 N2 V");

    // Express psi in the B^2 basis to get its kernel inside B^1.
    auto psi = b2.cols() > 0 ? b2.solve(psi_cols) : std::optional<QMatrix>(QMatrix(0, psi_cols.cols()));
    if (!psi) throw CheckError("two_term_reduction: psi image escapes N1 N2 V");
    QMatrix ker = psi->kernel_basis();  // columns: B^1 coordinates

    // phi~ : V -> ker psi, phi = (N1, N2)^t in B^1 coordinates.
    auto c1 = b1_1.solve(n1);
    auto c2 = b1_2.solve(n2);
    if (!c1 || !c2) throw CheckError("two_term_reduction: phi image escapes B^1");
    QMatrix phi = c1->vstack(*c2);
    auto phi_in_ker = ker.cols() > 0 ? ker.solve(phi) : std::optional<QMatrix>(QMatrix(0, dim));
    if (!phi_in_ker)
        throw CheckError("two_term_reduction: phi does not land in ker psi");

    int rank_phi = static_cast<int>(phi_in_ker->rank());
    TwoTermReduction r;
    r.dim_source = static_cast<int>(dim);
    r.dim_ker_psi = static_cast<int>(ker.cols());
    r.psi_surjective = surjective;
    r.h0 = r.dim_source - rank_phi;
    r.h1 = r.dim_ker_psi - rank_phi;
    return r;
}

std::vector<QMatrix> parse_matrix_list(const std::string& text) {
    std::vector<QMatrix> mats;
    std::vector<std::vector<Rational>> rows;
    std::istringstream in(text);
    std::string line;
    auto flush = [&]() {
        if (rows.empty()) return;
        mats.push_back(QMatrix::from_rows(rows));
        rows.clear();
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<Rational> row;
        std::string tok;
        while (ls >> tok) {
            try {
                row.emplace_back(tok);
            } catch (const std::exception&) {
                throw InputError("matrix file: bad rational '" + tok + "'");
            }
        }
        if (row.empty()) {
            flush();
        } else {
            rows.push_back(std::move(row));
        }
    }
    flush();
    return mats;
}

}  // namespace elfic
