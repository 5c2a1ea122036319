// Writes the bundled synthetic dataset: 333 monthly rows of three
// capitalizations following a seeded geometric random walk.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

int main(int argc, char** argv) {
  const char* path = argc > 1 ? argv[1] : "sample_prices.csv";
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << '\n';
    return 1;
  }
  std::mt19937_64 rng(19900101);
  std::normal_distribution<double> z;
  const double drift[] = {0.006, 0.008, 0.010};
  const double vol[] = {0.045, 0.060, 0.080};
  double cap[] = {120.0, 80.0, 40.0};
  out << "date,A,B,C\n";
  int year = 1990, month = 1;
  char buf[128];
  for (int t = 0; t < 333; ++t) {
    std::snprintf(buf, sizeof buf, "%04d-%02d,%.6f,%.6f,%.6f\n", year, month, cap[0], cap[1], cap[2]);
    out << buf;
    for (int i = 0; i < 3; ++i) cap[i] *= std::exp(drift[i] - 0.5 * vol[i] * vol[i] + vol[i] * z(rng));
    if (++month == 13) {
      month = 1;
      ++year;
    }
  }
  return 0;
}
