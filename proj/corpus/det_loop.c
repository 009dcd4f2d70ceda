#include <assert.h>
int main() {
    int i = 0;
    int s = 0;
    while (i < 30) {
        s = s + i;
        i = i + 1;
    }
    assert(s >= 29);
    return 0;
}
