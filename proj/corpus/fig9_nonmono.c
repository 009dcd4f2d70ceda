#include <assert.h>
int main() {
    int d = nondet_int();
    int y = 0;
    int t = 0;
    __ESBMC_assume(d >= -1);
    __ESBMC_assume(d <= 1);
    while (t < 12 && __VERIFIER_nondet_int()) {
        y = y + d;
        t = t + 1;
    }
    assert(y <= 100);
    return 0;
}
