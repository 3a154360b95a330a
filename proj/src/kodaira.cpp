#include "elfic/kodaira.hpp"

namespace elfic {

KodairaType KodairaType::make_In(int n) {
    if (n < 0) throw InputError("I_n requires n >= 0");
    return {In, n};
}

KodairaType KodairaType::make_InStar(int n) {
    if (n < 0) throw InputError("I_n* requires n >= 0");
    return {InStar, n};
}

KodairaType KodairaType::make(Kind k) {
    if (k == In || k == InStar) throw InputError("use make_In/make_InStar");
    return {k, 0};
}

std::string KodairaType::str() const {
    switch (kind) {
        case In: return "I" + std::to_string(n);
        case InStar: return "I" + std::to_string(n) + "*";
        case II: return "II";
        case III: return "III";
        case IV: return "IV";
        case IIStar: return "II*";
        case IIIStar: return "III*";
        case IVStar: return "IV*";
    }
    throw Error("unreachable");
}

KodairaType KodairaType::parse(const std::string& tag) {
    if (tag == "II") return make(II);
    if (tag == "III") return make(III);
    if (tag == "IV") return make(IV);
    if (tag == "II*") return make(IIStar);
    if (tag == "III*") return make(IIIStar);
    if (tag == "IV*") return make(IVStar);
    if (tag.size() >= 2 && tag[0] == 'I') {
        bool star = tag.back() == '*';
        std::string digits = tag.substr(1, tag.size() - 1 - (star ? 1 : 0));
        if (!digits.empty() &&
            digits.find_first_not_of("0123456789") == std::string::npos) {
            int n = std::stoi(digits);
            return star ? make_InStar(n) : make_In(n);
        }
    }
    throw InputError("unknown Kodaira tag '" + tag + "'");
}

KodairaType classify(int ord_f, int ord_g, int ord_delta) {
    if (ord_f < 0 || ord_g < 0 || ord_delta < 0)
        throw InputError("vanishing orders must be nonnegative");
    if (ord_f >= 4 && ord_g >= 6)
        throw CheckError("non-minimal model: ord f >= 4 and ord g >= 6 along a component");

    const int a = ord_f, b = ord_g, d = ord_delta;
    if (d == 0) {
        if (a == 0 || b == 0) return KodairaType::make_In(0);
    } else if (a == 0 && b == 0) {
        return KodairaType::make_In(d);
    } else if (d == 2 && a >= 1 && b == 1) {
        return KodairaType::make(KodairaType::II);
    } else if (d == 3 && a == 1 && b >= 2) {
        return KodairaType::make(KodairaType::III);
    } else if (d == 4 && a >= 2 && b == 2) {
        return KodairaType::make(KodairaType::IV);
    } else if (d == 6 && a >= 2 && b >= 3) {
        return KodairaType::make_InStar(0);
    } else if (d >= 7 && a == 2 && b == 3) {
        return KodairaType::make_InStar(d - 6);
    } else if (d == 8 && a >= 3 && b == 4) {
        return KodairaType::make(KodairaType::IVStar);
    } else if (d == 9 && a == 3 && b >= 5) {
        return KodairaType::make(KodairaType::IIIStar);
    } else if (d == 10 && a >= 4 && b == 5) {
        return KodairaType::make(KodairaType::IIStar);
    }
    throw InputError("vanishing orders (" + std::to_string(a) + "," + std::to_string(b) + "," +
                     std::to_string(d) + ") match no Kodaira type");
}

static QMatrix mat2(int a, int b, int c, int d) {
    return QMatrix::from_rows({{Rational(a), Rational(b)}, {Rational(c), Rational(d)}});
}

QMatrix monodromy_matrix(const KodairaType& t) {
    switch (t.kind) {
        case KodairaType::In: return mat2(1, t.n, 0, 1);
        case KodairaType::InStar: return mat2(-1, -t.n, 0, -1);
        case KodairaType::II: return mat2(1, 1, -1, 0);
        case KodairaType::III: return mat2(0, 1, -1, 0);
        case KodairaType::IV: return mat2(0, 1, -1, -1);
        case KodairaType::IVStar: return mat2(-1, -1, 1, 0);
        case KodairaType::IIIStar: return mat2(0, -1, 1, 0);
        case KodairaType::IIStar: return mat2(0, -1, 1, 1);
    }
    throw Error("unreachable");
}

bool is_unipotent(const QMatrix& T) {
    if (T.rows() != T.cols()) return false;
    QMatrix n = T - QMatrix::identity(T.rows());
    return (n * n).is_zero();
}

QMatrix log_nilpotent(const QMatrix& T) {
    if (!is_unipotent(T))
        throw CheckError("log_nilpotent requires a unipotent matrix ((T-I)^2 = 0)");
    return T - QMatrix::identity(T.rows());
}

int fiber_component_count(const KodairaType& t) {
    switch (t.kind) {
        case KodairaType::In: return t.n == 0 ? 1 : t.n;
        case KodairaType::InStar: return t.n + 5;
        case KodairaType::II: return 1;
        case KodairaType::III: return 2;
        case KodairaType::IV: return 3;
        case KodairaType::IVStar: return 7;
        case KodairaType::IIIStar: return 8;
        case KodairaType::IIStar: return 9;
    }
    throw Error("unreachable");
}

int fiber_component_count(const KodairaType& t, bool split, int declared) {
    int full = fiber_component_count(t);
    if (split) return full;
    if (declared < 1 || declared > full)
        throw InputError("non-split component count for " + t.str() + " outside [1, " +
                         std::to_string(full) + "]");
    return declared;
}

int invariant_dim(const KodairaType& t) {
    QMatrix T = monodromy_matrix(t);
    return static_cast<int>(2 - (T - QMatrix::identity(2)).rank());
}

}  // namespace elfic
