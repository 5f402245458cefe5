#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    char *str[1024] = {0};

    if (params[2].memref.size > 1024)
        return TEE_ERROR_BAD_PARAMETERS;
    for (int i = 0; i < params[2].memref.size; i++) {
        str[i] = params[2].memref.buffer[i];
    }
    return TEE_SUCCESS;
}
