/* SPDX-License-Identifier: Apache-2.0 */
/* The public header must compile as C and the library must link from C. */
#include <math.h>
#include <stdio.h>

#include "rodeo/rodeo.h"

int main(void) {
  const double times[] = {0.449, 4.956, 10.302};
  rodeo_schedule* s = NULL;
  double zeta = 0.0, factor = 0.0;
  if (rodeo_schedule_create(times, 3, &s) != RODEO_OK) return 1;
  if (rodeo_band_rsn_closed_form(0.1, 1.0, s, &zeta) != RODEO_OK) return 2;
  if (rodeo_table_convention_factor(0.1, 1.0, &factor) != RODEO_OK) return 3;
  rodeo_schedule_free(s);
  printf("rodeo %s: zeta = %.6g\n", rodeo_version(), factor * zeta);
  if (fabs(factor * zeta - 0.153) > 0.002) return 4;
  if (rodeo_characteristic_time(-1.0, &zeta) != RODEO_ERR_DOMAIN) return 5;
  printf("error: %s\n", rodeo_last_error());
  return 0;
}
