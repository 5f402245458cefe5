// variable assignment by shared memory value
unsigned int size = params[0].memref.size;

if (size < 16)
    return TEE_ERROR_SHORT_BUFFER;
