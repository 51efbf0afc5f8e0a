#include <iostream>

int main() {
  std::cout << "treecode: not wired up yet\n";
  return 0;
}
