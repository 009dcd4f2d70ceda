#include <assert.h>
int main() {
    int x = 2;
    while (x < 1000 && __VERIFIER_nondet_int()) {
        x = x * x;
    }
    assert(x >= 2);
    return 0;
}
