unsigned char membuf_input[] = "from_CA_to_TA";
// definition of shared memory
TEEC_SharedMemory shm = {
    .size = sizeof(membuf_input),
};
TEEC_AllocateSharedMemory(&ctx, &shm);
// shared memory can be changed outside TEE
memcpy(shm.buffer, membuf_input, shm.size);
op.params[2].memref.parent = &shm;
res = TEEC_InvokeCommand(&sess, TA_TEST_APP_FILL_MEM_BUF, &op, &err_origin);
