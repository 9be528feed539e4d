#include <cstdio>

int main() {
  std::puts("srlc: command-line interface not wired up yet");
  return 2;
}
