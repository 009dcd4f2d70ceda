#include <assert.h>
int main() {
    int x = nondet_int();
    __ESBMC_assume(x >= 0);
    __ESBMC_assume(x <= 1);
    assert(x >= 1);
    return 0;
}
