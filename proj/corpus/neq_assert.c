#include <assert.h>
int main() {
    int x = nondet_int();
    int y = nondet_int();
    __ESBMC_assume(x >= 0);
    __ESBMC_assume(x <= 5);
    __ESBMC_assume(y >= 6);
    __ESBMC_assume(y <= 9);
    assert(x != y);
    return 0;
}
