#include <string.h>
#include <tee_internal_api.h>

static void report(TEE_Param p[4], uint32_t salt)
{
    snprintf(p[1].memref.buffer, p[1].memref.size, "state %u", salt);
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
    report(params, current_salt());
    return TEE_SUCCESS;
}
