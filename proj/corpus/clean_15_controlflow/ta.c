uint32_t len = params[0].memref.size;
TEE_Result res;

res = TEE_CipherDoFinal(op, secret, sizeof(secret), params[0].memref.buffer, &len);
if (res != TEE_SUCCESS)
    return res;
params[0].memref.size = len;
