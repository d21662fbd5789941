#include <stdio.h>

#include "superspace_delta.h"

static int check(SsdStatus s) {
    if (s != SSD_STATUS_OK) {
        const char *msg = ssd_last_error();
        fprintf(stderr, "error %d: %s\n", (int)s, msg ? msg : "(none)");
        return 1;
    }
    return 0;
}

int main(void) {
    double e;
    if (check(ssd_energy_for_dimension(-1.0, 1.0, &e))) return 1;
    printf("superspace-delta %s\nE(M=-1) = %.12g\n", ssd_version(), e);

    SsdSpectrum *spec = NULL;
    if (check(ssd_spectrum_new(2, 1.0, &spec))) return 1;
    size_t geo, alg;
    ssd_spectrum_zero_multiplicity(spec, &geo, &alg);
    double level;
    bool found;
    ssd_spectrum_predicted_level(spec, &level, &found);
    printf("n=2 zero multiplicity %zu (geometric) %zu (algebraic), level %.12g found=%d\n",
           geo, alg, level, (int)found);
    ssd_spectrum_free(spec);

    if (ssd_energy_for_dimension(3.0, 1.0, &e) == SSD_STATUS_DOMAIN_ERROR)
        printf("M=3 rejected: %s\n", ssd_last_error());
    return 0;
}
