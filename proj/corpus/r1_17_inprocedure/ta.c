#include <string.h>
#include <tee_internal_api.h>

static void put(char *dest, const char *src, size_t len)
{
    TEE_MemMove(dest, src, len);
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_MEMREF_OUTPUT,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    char key[] = "0a1b2c3d4e5f";
    char *str = TEE_Malloc(strlen(key) + 1, 0);

    put(str, key, strlen(key));
    put(params[1].memref.buffer, key, strlen(key));
    TEE_Free(str);
    return TEE_SUCCESS;
}
