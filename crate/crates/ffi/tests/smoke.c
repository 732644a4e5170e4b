#include <math.h>
#include <stdio.h>

#include "bingham.h"

#define CHECK(cond)                                                \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);   \
      return 1;                                                    \
    }                                                              \
  } while (0)

int main(void) {
  double f = 0.0;
  CHECK(bh_normalization_constant(-8.0, &f) == BH_STATUS_OK);
  CHECK(fabs(f - 1.3006314299924994) < 1e-13);

  BhParams prior = {{1.0, 0.0, 0.0, 1.0}, 0.0};
  BhParams noise = {{0.0, 1.0, 1.0, 0.0}, -10.0};
  BhFilter *filter = NULL;
  CHECK(bh_filter_new(&prior, &filter) == BH_STATUS_OK);
  CHECK(bh_filter_predict(filter, &noise) == BH_STATUS_STAGE_MISMATCH);
  CHECK(bh_last_error_message()[0] != '\0');

  BhVec2 z = {0.0, 1.0};
  CHECK(bh_filter_update(filter, &noise, z) == BH_STATUS_OK);
  BhParams post;
  CHECK(bh_filter_params(filter, &post) == BH_STATUS_OK);
  BhVec2 mode;
  CHECK(bh_mode(&post, &mode) == BH_STATUS_OK);
  CHECK(fabs(fabs(mode.c2) - 1.0) < 1e-12);
  bh_filter_free(filter);

  BhSampler *sampler = NULL;
  BhVec2 draws[16];
  CHECK(bh_sampler_new(&noise, 1, &sampler) == BH_STATUS_OK);
  CHECK(bh_sampler_draw(sampler, draws, 16) == BH_STATUS_OK);
  bh_sampler_free(sampler);

  CHECK(bh_kummer_half_one(2.0, &f) == BH_STATUS_DOMAIN);
  printf("ok\n");
  return 0;
}
