#include <stdio.h>
#include "quotk.h"

int main(void) {
    QuotkSeries *s = NULL;
    if (quotk_rank1(0, 2, 4, &s) != QUOTK_STATUS_OK) return 1;
    int64_t expect[4] = {2, 4, 2, 0};
    for (int64_t p = 0; p < 4; p++) {
        int64_t a, b;
        if (quotk_series_coeff(s, p, &a, &b) != QUOTK_STATUS_OK) return 2;
        if (a != expect[p] || b != 1) return 3;
    }
    quotk_series_free(s);
    if (quotk_compute(NULL, &s) != QUOTK_STATUS_NULL_POINTER) return 4;
    printf("ok\n");
    return 0;
}
