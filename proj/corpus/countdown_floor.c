#include <assert.h>
int main() {
    int c = 100;
    while (c > 0 && __VERIFIER_nondet_int()) {
        c = c - 2;
    }
    assert(c <= 60);
    return 0;
}
