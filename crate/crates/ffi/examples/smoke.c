#include <stdio.h>
#include "structeig.h"

int main(void) {
    const double alpha[] = {2.0, -1.0};
    const double beta[] = {1.0};
    SeSolution *sol = NULL;
    if (se_gevp_analytic(1, 5, alpha, NULL, 2, beta, NULL, 1, &sol) != SE_STATUS_OK) {
        char msg[256];
        se_last_error_message(msg, sizeof msg);
        fprintf(stderr, "%s\n", msg);
        return 1;
    }
    for (size_t i = 0; i < se_solution_len(sol); ++i) {
        double re, im;
        size_t mode;
        se_solution_value(sol, i, &re, &im, &mode);
        printf("%zu %.17g %.17g\n", mode, re, im);
    }
    se_solution_free(sol);
    return 0;
}
