#include "special.hpp"

#include <string>

#include <gsl/gsl_cdf.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include "txnet/error.hpp"

namespace txnet::special {

namespace {

void quiet() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

}  // namespace

double hurwitz_zeta(double s, double q) {
    quiet();
    gsl_sf_result result;
    const int status = gsl_sf_hzeta_e(s, q, &result);
    if (status == GSL_EUNDRFLW) return 0.0;
    if (status != GSL_SUCCESS)
        throw Error(Errc::invalid_argument, std::string("hurwitz zeta: ") + gsl_strerror(status));
    return result.val;
}

double normal_upper(double z) {
    quiet();
    return gsl_cdf_ugaussian_Q(z);
}

double poisson_upper(long long k, double lambda) {
    quiet();
    if (k < 0) return 1.0;
    return gsl_cdf_poisson_Q(static_cast<unsigned int>(k), lambda);
}

}  // namespace txnet::special
