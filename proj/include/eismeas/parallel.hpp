#pragma once

namespace eismeas {

// Thread cap for OpenMP regions: EISMEAS_THREADS if set and positive, else the OpenMP default.
int thread_count();
void set_thread_count(int n);

}  // namespace eismeas
