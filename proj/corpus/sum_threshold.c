#include <assert.h>
int main() {
    int x = 0;
    int y = 0;
    while (x < 60 && __VERIFIER_nondet_int()) {
        x = x + 1;
        y = y + 1;
    }
    assert(x + y >= 10);
    return 0;
}
