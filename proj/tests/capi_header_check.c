#include "hotisim/hotisim.h"

/* Compiled as C so the public header stays valid C. */
int capi_c_dimension(void) {
  hoti_config* cfg = 0;
  hoti_model* model = 0;
  int n = -1;
  if (hoti_config_new(&cfg) != HOTI_OK) return -1;
  if (hoti_config_set(cfg, "nx", "2") == HOTI_OK && hoti_config_set(cfg, "ny", "3") == HOTI_OK &&
      hoti_model_build(cfg, &model) == HOTI_OK)
    n = hoti_model_dimension(model);
  hoti_model_free(model);
  hoti_config_free(cfg);
  return n;
}
