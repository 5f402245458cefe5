#include <string.h>
#include <tee_internal_api.h>

static TEE_OperationHandle op;
static uint8_t secret[32];

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
    uint32_t len = params[1].memref.size;
    TEE_Result res;

    res = TEE_CipherDoFinal(op, secret, sizeof(secret), params[1].memref.buffer, &len);
    if (res != TEE_SUCCESS)
        return res;
    params[1].memref.size = len;
    return TEE_SUCCESS;
}
