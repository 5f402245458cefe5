// params[2].memref is shared memory
void *buf = params[2].memref.buffer;
unsigned int sz = params[2].memref.size;
// params[2].memref may have been changed outside TEE
if (!TEE_MemCompare(buf, "from_CA_to_TA", sz)) {
    IMSG("membuf test : Pass!\n");
}
