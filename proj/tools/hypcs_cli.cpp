#include <cstdio>

int main() {
  std::puts("hypcs: placeholder");
  return 0;
}
