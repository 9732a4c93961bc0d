// Compares the serial and OpenMP elimination/multiplication kernels on seeded
// random sparse matrices and checks that they produce identical results.
#include <jb/linalg.hpp>

#include <chrono>
#include <cstdio>
#include <random>

using namespace jb;

namespace {

QMatrix random_sparse(std::mt19937_64& rng, int rows, int cols, int percent) {
  std::uniform_int_distribution<int> hit(0, 99);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (hit(rng) < percent) {
        Rat v(num(rng), den(rng));
        v.canonicalize();
        m.set(i, j, v);
      }
    }
  }
  return m;
}

template <typename F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 240;
  std::mt19937_64 rng(20260816);
  QMatrix a = random_sparse(rng, n, n, 8);
  QMatrix b = random_sparse(rng, n, n, 8);

  std::printf("matrix %dx%d, %ld nonzeros\n", n, n, a.nnz());

  int rs = 0, rp = 0;
  double t_rank_s = time_ms([&] { rs = rank(a, Exec::Serial); });
  double t_rank_p = time_ms([&] { rp = rank(a, Exec::Parallel); });
  std::printf("rank      serial %8.1f ms   parallel %8.1f ms   speedup %.2fx\n",
              t_rank_s, t_rank_p, t_rank_s / t_rank_p);
  if (rs != rp) {
    std::printf("MISMATCH: serial rank %d vs parallel rank %d\n", rs, rp);
    return 1;
  }

  QMatrix ms, mp;
  double t_mul_s = time_ms([&] { ms = mul(a, b, Exec::Serial); });
  double t_mul_p = time_ms([&] { mp = mul(a, b, Exec::Parallel); });
  std::printf("multiply  serial %8.1f ms   parallel %8.1f ms   speedup %.2fx\n",
              t_mul_s, t_mul_p, t_mul_s / t_mul_p);
  if (!(ms == mp)) {
    std::printf("MISMATCH: serial and parallel products differ\n");
    return 1;
  }

  std::printf("results identical\n");
  return 0;
}
