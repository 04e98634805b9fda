#include "simpletools.h"

int main() {
  int i;
  for (i = 0; i < 3; i++) {
    freqout(4, 500, 3000);
  }
  return 0;
}
