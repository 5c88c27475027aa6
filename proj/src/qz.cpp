#include "steklov/qz.hpp"
#include "steklov/errors.hpp"

#include <string>
#include <vector>

extern "C" {
void dggev_(const char* jobvl, const char* jobvr, const int* n,
            double* a, const int* lda, double* b, const int* ldb,
            double* alphar, double* alphai, double* beta,
            double* vl, const int* ldvl, double* vr, const int* ldvr,
            double* work, const int* lwork, int* info);
}

namespace steklov {

QzResult qz_solve(Eigen::MatrixXd A, Eigen::MatrixXd B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw EigendecompositionFailure("qz_solve: A and B must be square and of equal size");

    const int n = static_cast<int>(A.rows());
    QzResult result;
    result.alpha_re.resize(n);
    result.alpha_im.resize(n);
    result.beta.resize(n);
    result.vr.resize(n, n);

    int info = 0;
    int lwork = -1;
    double work_query = 0.0;
    dggev_("N", "V", &n, A.data(), &n, B.data(), &n,
           result.alpha_re.data(), result.alpha_im.data(), result.beta.data(),
           nullptr, &n, result.vr.data(), &n, &work_query, &lwork, &info);
    if (info != 0)
        throw EigendecompositionFailure("dggev workspace query failed, info = " + std::to_string(info));

    lwork = static_cast<int>(work_query);
    std::vector<double> work(static_cast<size_t>(lwork));
    dggev_("N", "V", &n, A.data(), &n, B.data(), &n,
           result.alpha_re.data(), result.alpha_im.data(), result.beta.data(),
           nullptr, &n, result.vr.data(), &n, work.data(), &lwork, &info);
    if (info != 0)
        throw EigendecompositionFailure("dggev failed, info = " + std::to_string(info));

    return result;
}

} // namespace steklov
