#pragma once

#include <omp.h>

namespace lo2d {

// Every data-parallel kernel in the library takes one of these. The serial
// path is the reference implementation: the parallel path must reproduce it
// bit for bit, which the tests check.
enum class Execution { serial, parallel };

// Scoped override of the OpenMP thread count; 0 keeps the current setting.
class ThreadLimit {
public:
  explicit ThreadLimit(int max_threads)
      : m_previous(omp_get_max_threads()),
        m_current(max_threads > 0 ? max_threads : m_previous) {
    omp_set_num_threads(m_current);
  }
  ~ThreadLimit() { omp_set_num_threads(m_previous); }

  ThreadLimit(const ThreadLimit &) = delete;
  ThreadLimit &operator=(const ThreadLimit &) = delete;

  int threads() const { return m_current; }

private:
  int m_previous;
  int m_current;
};

} // namespace lo2d
