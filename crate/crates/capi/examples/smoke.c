#include <math.h>
#include <stdio.h>
#include <string.h>
#include "wlest.h"

int main(void) {
    const char *json =
        "{\"H\":{\"rows\":2,\"cols\":2,\"re\":[1,0,0,1],\"im\":[0,0,0,0]},"
        "\"noise\":{\"C\":{\"rows\":2,\"cols\":2,\"re\":[1,0,0,1],\"im\":[0,0,0,0]}}}";
    WlestModel *model = NULL;
    if (wlest_model_from_json(json, &model) != WLEST_STATUS_OK) {
        fprintf(stderr, "model: %s\n", wlest_last_error_message());
        return 1;
    }
    if (wlest_model_ny(model) != 2 || wlest_model_nx(model) != 2) return 2;

    double y_re[2] = {2.0, -1.0}, y_im[2] = {3.0, 0.5};
    double x_re[2], x_im[2], x_var[2];
    if (wlest_estimate(model, WLEST_ESTIMATOR_RBWLUE, y_re, y_im, 2,
                       x_re, x_im, x_var) != WLEST_STATUS_OK) {
        fprintf(stderr, "estimate: %s\n", wlest_last_error_message());
        return 3;
    }
    if (x_re[0] != 2.0 || x_re[1] != -1.0) return 4;
    if (x_im[0] != 0.0 || x_im[1] != 0.0) return 5;
    if (x_var[0] != 0.5 || x_var[1] != 0.5) return 6;

    if (wlest_estimate(model, WLEST_ESTIMATOR_RE_BLUE, y_re, y_im, 2,
                       x_re, x_im, x_var) != WLEST_STATUS_OK) return 7;
    if (!isnan(x_var[0])) return 8;

    if (wlest_estimate(model, WLEST_ESTIMATOR_BLUE, y_re, y_im, 1,
                       x_re, x_im, NULL) != WLEST_STATUS_VALIDATION_ERROR) return 9;
    if (strlen(wlest_last_error_message()) == 0) return 10;

    wlest_model_free(model);
    printf("capi smoke: ok (version %s)\n", wlest_version());
    return 0;
}
