#include "molt/parallel.hpp"

#include <omp.h>

namespace molt {

void set_num_threads(int k) {
  if (k > 0) omp_set_num_threads(k);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace molt
